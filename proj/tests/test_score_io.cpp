#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "citeval/error.hpp"
#include "citeval/score_io.hpp"
#include "fixtures.hpp"

using namespace citeval;

namespace {

ScoreRun fixture_run() {
  ModelConfig cfg;
  cfg.population = Population::all;
  cfg.fixed_beta = test::kReferenceBeta;
  return compute_all(test::two_level_corpus(), cfg);
}

}  // namespace

TEST_SUITE("score_io") {
  TEST_CASE("number formatting") {
    CHECK(format_exact(2.625) == "2.625");
    CHECK(format_exact(0.1) == "0.1");
    CHECK(std::stod(format_exact(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_report(1.0 / 3.0) == "0.333333");
    CHECK(format_report(17.6481770) == "17.6482");
    CHECK(format_report(3.0) == "3");
  }

  TEST_CASE("score file layout") {
    const auto corpus = test::two_level_corpus();
    const auto sheet = make_score_sheet(corpus, fixture_run());
    const auto text = scores_csv(sheet);
    std::istringstream in(text);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "id,year,subject_categories,n,c,cv_star,cv");
    CHECK(first.rfind("alpha,2010,SC1,3,2.625,5.78", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);

    const auto by_group = scores_by_group_csv(sheet);
    CHECK(by_group.rfind("id,year,subject_category,n,c,cv_star,cv\n", 0) == 0);
    CHECK(std::count(by_group.begin(), by_group.end(), '\n') == 9);
  }

  TEST_CASE("score files round trip bit for bit") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto corpus = generate(test::random_small_spec(seed, 120));
      ModelConfig cfg;
      cfg.fixed_beta = test::kReferenceBeta;
      const auto sheet = make_score_sheet(corpus, compute_all(corpus, cfg));
      std::istringstream a(scores_csv(sheet)), b(scores_by_group_csv(sheet));
      const auto back = parse_score_files(a, b);
      REQUIRE(back.publications.size() == sheet.publications.size());
      REQUIRE(back.by_group.size() == sheet.by_group.size());
      for (std::size_t i = 0; i < sheet.publications.size(); ++i) {
        const auto& x = sheet.publications[i];
        const auto& y = back.publications[i];
        CHECK(x.id == y.id);
        CHECK(x.subject_categories == y.subject_categories);
        CHECK(x.n == y.n);
        CHECK(x.c == y.c);
        CHECK(x.cv_star == y.cv_star);
        CHECK(x.cv == y.cv);
      }
      for (std::size_t i = 0; i < sheet.by_group.size(); ++i) {
        CHECK(sheet.by_group[i].pub == back.by_group[i].pub);
        CHECK(sheet.by_group[i].key == back.by_group[i].key);
        CHECK(sheet.by_group[i].cv == back.by_group[i].cv);
      }
    }
  }

  TEST_CASE("malformed score files") {
    std::istringstream a("id,year,subject_categories,n,c,cv_star,cv\nP1,2010,X,1,abc,1,1\n");
    std::istringstream b("id,year,subject_category,n,c,cv_star,cv\n");
    CHECK_THROWS_WITH_AS(parse_score_files(a, b), doctest::Contains("row 2"), ValidationError);

    std::istringstream c("id,year,subject_categories,n,c,cv_star,cv\nP1,2010,X,1,1,1,1\n");
    std::istringstream d("id,year,subject_category,n,c,cv_star,cv\nP9,2010,X,1,1,1,1\n");
    CHECK_THROWS_WITH_AS(parse_score_files(c, d), doctest::Contains("P9"), ValidationError);

    std::istringstream e("id,year,n\n");
    std::istringstream f("id\n");
    CHECK_THROWS_AS(parse_score_files(e, f), ValidationError);
  }

  TEST_CASE("report layouts") {
    const auto run = fixture_run();
    const auto base = baselines_csv(run.baselines);
    CHECK(base == "year,subject_category,n_pubs,n_cited,c_exp,c_max,c_median,cv_star_exp\n"
                  "2010,SC1,14,8,1.14286,3,1,2.83982\n");

    RegressionResult r;
    r.key = {2010, "SC1"};
    r.n_points = 5;
    r.r_squared = 144.0 / 148.0;
    r.slope = 1.2;
    r.intercept = -0.4;
    const RegressionResult rows[] = {r};
    CHECK(report_r2_csv(rows) ==
          "year,subject_category,n_points,r_squared,slope,intercept\n2010,SC1,5,0.972973,1.2,-0.4\n");

    TopSetReport t;
    t.percentile = 90;
    t.set_c = {1, 2};
    t.set_cv = {2};
    t.shift_c_to_cv = 0.5;
    const TopSetReport tops[] = {t};
    CHECK(report_topk_csv(tops) ==
          "percentile,shift_c_to_cv,shift_cv_to_c,set_size_c,set_size_cv\n90,0.5,0,2,1\n");
  }

  TEST_CASE("sensitivity report is keyed by alpha") {
    SensitivityReport rep;
    rep.beta = test::kReferenceBeta;
    rep.entries.resize(2);
    rep.entries[0].alpha = 0.5;
    rep.entries[1].alpha = 2.0;
    rep.entries[1].cv_winner_share = 0.75;
    rep.entries[1].top_overlap = 0.8;
    const auto doc = nlohmann::json::parse(report_sensitivity_json(rep));
    CHECK(doc["model"] == "exponential");
    CHECK(doc["beta"].get<double>() == 0.0364814);
    CHECK(doc["alphas"].contains("0.5"));
    CHECK(doc["alphas"]["2"]["cv_winner_share"].get<double>() == 0.75);
    CHECK(doc["alphas"]["0.5"]["cv_winner_share"].is_null());
    CHECK(doc["alphas"]["2"]["top_overlap_vs_alpha1"].get<double>() == 0.8);
  }
}
