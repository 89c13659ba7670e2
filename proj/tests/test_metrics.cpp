// The metric battery on hand-built fixtures.

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/metric_matrix.hpp"
#include "scimetrics/metrics.hpp"

using namespace scim;

namespace {

EntityRef paper_entity(const char* id) { return {Level::paper, id}; }
EntityRef author_ref(const char* id) { return {Level::author, id}; }
EntityRef unit_ref(const char* id) { return {Level::unit, id}; }

// A and B cite C; D cites C; B cites D. X wrote C and D.
Corpus citation_fixture() {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U1", "bio").unit("U2", "bio");
  b.author("X", "U1").author("Y", "U2");
  b.paper("C", "bio", "2000-01-01", {"X"});
  b.paper("D", "bio", "2001-01-01", {"X"}, {"C"});
  b.paper("A", "bio", "2002-01-01", {"Y"}, {"C"});
  b.paper("B", "bio", "2002-06-01", {"Y"}, {"C", "D"});
  return b.build();
}

}  // namespace

TEST_CASE("citation counts exclude internal edges only above paper level") {
  const Corpus c = citation_fixture();
  CHECK(citation_count(c, paper_entity("A")) == 0);
  CHECK(citation_count(c, paper_entity("C")) == 3);
  CHECK(citation_count(c, paper_entity("D")) == 1);
  // C has A and B from outside, D has B: the D -> C edge is internal
  CHECK(citation_count(c, author_ref("X")) == 3);
  CHECK(citation_count(c, unit_ref("U1")) == 3);
  CHECK(citation_count(c, paper_entity("C"), parse_date_range("2002-01-01:")) == 2);
  CHECK_THROWS_AS(citation_count(c, paper_entity("nope")), Error);
}

TEST_CASE("the author self-edge example") {
  // C has 2 citers, D has 1, and D cites C
  fx::CorpusBuilder b;
  b.journal("J1").unit("U1", "bio").unit("U2", "bio");
  b.author("X", "U1").author("Y", "U2");
  b.paper("C", "bio", "2000-01-01", {"X"});
  b.paper("D", "bio", "2001-01-01", {"X"}, {"C"});
  b.paper("E", "bio", "2002-01-01", {"Y"}, {"C", "D"});
  const Corpus c = b.build();
  CHECK(citation_count(c, paper_entity("C")) == 2);
  CHECK(citation_count(c, paper_entity("D")) == 1);
  CHECK(citation_count(c, author_ref("X")) == 2);
}

TEST_CASE("publication counts respect the window") {
  const Corpus c = citation_fixture();
  CHECK(publication_count(c, author_ref("X")) == 2);
  CHECK(publication_count(c, author_ref("Y"), parse_date_range("2002-03-01:")) == 1);
  CHECK(publication_count(c, unit_ref("U2")) == 2);
  CHECK_THROWS_AS(publication_count(c, paper_entity("C")), Error);
}

TEST_CASE("journal impact factor and immediacy index") {
  fx::CorpusBuilder b;
  b.journal("J").journal("K").unit("U", "bio").author("X", "U");
  b.paper("a1", "bio", "2001-05-01", {"X"}, {}, "J");
  b.paper("a2", "bio", "2002-05-01", {"X"}, {}, "J");
  b.paper("c1", "bio", "2003-02-01", {"X"}, {"a1", "a2"}, "K");
  b.paper("c2", "bio", "2003-03-01", {"X"}, {"a1", "a2"}, "K");
  b.paper("c3", "bio", "2003-04-01", {"X"}, {"a1", "a2"}, "K");
  b.paper("late", "bio", "2004-01-01", {"X"}, {"a1", "a2"}, "K");
  // same-year pair for the immediacy index
  b.paper("s1", "bio", "2005-01-01", {"X"}, {}, "J");
  b.paper("s2", "bio", "2005-02-01", {"X"}, {}, "J");
  b.paper("t1", "bio", "2005-06-01", {"X"}, {"s1", "s2"}, "K");
  b.paper("t2", "bio", "2005-07-01", {"X"}, {"s1", "s2"}, "K");
  b.paper("t3", "bio", "2006-01-01", {"X"}, {"s1", "s2"}, "K");
  const Corpus c = b.build();
  // 2 articles from 2001-2002, 6 citations dated 2003
  CHECK(journal_impact_factor(c, "J", 2003) == doctest::Approx(3.0));
  CHECK(journal_impact_factor(c, "J", 2000) == 0.0);
  CHECK(immediacy_index(c, "J", 2005) == doctest::Approx(2.0));
  CHECK(immediacy_index(c, "J", 2003) == 0.0);
  CHECK(immediacy_index(c, "K", 2003) == 0.0);
  CHECK_THROWS_AS(journal_impact_factor(c, "nope", 2003), Error);
}

TEST_CASE("h-index examples") {
  CHECK(h_index_of(std::vector<std::int64_t>{}) == 0);
  CHECK(h_index_of(std::vector<std::int64_t>{10, 8, 5, 4, 3}) == 4);
  CHECK(h_index_of(std::vector<std::int64_t>(9, 1)) == 1);
  CHECK(h_index_of(std::vector<std::int64_t>{0, 0}) == 0);

  const Corpus c = citation_fixture();
  CHECK(h_index(c, author_ref("X")) == 1);  // C: 3, D: 1
  CHECK(h_index(c, author_ref("Y")) == 0);
  CHECK(h_index(c, unit_ref("U1")) == 1);
  CHECK_THROWS_AS(h_index(c, paper_entity("C")), Error);
}

TEST_CASE("cocitation and co-citedness") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").author("X", "U");
  b.paper("p", "bio", "2000-01-01", {"X"});
  b.paper("q", "bio", "2000-01-01", {"X"});
  b.paper("r", "bio", "2000-01-01", {"X"});
  b.paper("lone", "bio", "2000-01-01", {"X"});
  b.paper("c1", "bio", "2001-01-01", {"X"}, {"p", "q", "r"});
  b.paper("c2", "bio", "2001-01-01", {"X"}, {"p", "q"});
  b.paper("c3", "bio", "2001-01-01", {"X"}, {"p", "q"});
  b.paper("c4", "bio", "2001-01-01", {"X"}, {"r"});
  const Corpus c = b.build();
  CHECK(cocitation(c, "p", "q") == 3);
  CHECK(cocitation(c, "q", "p") == 3);
  CHECK(cocitation(c, "p", "r") == 1);
  CHECK(cocitation(c, "p", "lone") == 0);
  CHECK_THROWS_AS(cocitation(c, "p", "p"), Error);

  CHECK(co_citedness_score(c, "lone") == 0.0);
  // partners of p: q (weight 3, 3 citations) and r (weight 1, 2 citations)
  CHECK(co_citedness_score(c, "p") == doctest::Approx((3.0 * 3 + 1.0 * 2) / 4.0));
  // brute force over all partners for every paper
  for (const auto& paper : c.papers()) {
    double num = 0.0, den = 0.0;
    for (const auto& other : c.papers()) {
      if (other.id == paper.id) continue;
      const auto w = static_cast<double>(cocitation(c, paper.id, other.id));
      num += w * static_cast<double>(c.graph().citers(*c.find_paper(other.id)).size());
      den += w;
    }
    CHECK(co_citedness_score(c, paper.id) == doctest::Approx(den > 0 ? num / den : 0.0));
  }
}

TEST_CASE("co-citedness with a single partner is its citation count") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").author("X", "U");
  b.paper("p", "bio", "2000-01-01", {"X"});
  b.paper("q", "bio", "2000-01-01", {"X"});
  b.paper("both", "bio", "2001-01-01", {"X"}, {"p", "q"});
  for (int i = 0; i < 6; ++i)
    b.paper("only" + std::to_string(i), "bio", "2001-01-01", {"X"}, {"q"});
  CHECK(co_citedness_score(b.build(), "p") == doctest::Approx(7.0));
}

TEST_CASE("link analysis on corpus fixtures") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").author("X", "U");
  b.paper("A", "bio", "2001-01-01", {"X"}, {"C"});
  b.paper("B", "bio", "2001-01-01", {"X"}, {"C"});
  b.paper("C", "bio", "2000-01-01", {"X"});
  const Corpus c = b.build();
  const auto h = hits_scores(c);
  CHECK(h.authority[2] == doctest::Approx(1.0));
  CHECK(h.hub[0] == doctest::Approx(0.5));
  CHECK(h.hub[1] == doctest::Approx(0.5));

  fx::CorpusBuilder cyc;
  cyc.journal("J1").unit("U", "bio").author("X", "U");
  cyc.paper("a", "bio", "2000-01-01", {"X"}, {"b"});
  cyc.paper("b", "bio", "2000-01-01", {"X"}, {"c"});
  cyc.paper("c", "bio", "2000-01-01", {"X"}, {"a"});
  for (double r : corpus_pagerank(cyc.build()).rank) CHECK(r == doctest::Approx(1.0 / 3.0));

  fx::CorpusBuilder one;
  one.journal("J1").unit("U", "bio").author("X", "U");
  one.paper("a", "bio", "2000-01-01", {"X"});
  const auto g = graph_scores(one.build());
  CHECK(g.no_edges);
  CHECK(g.pagerank == std::vector<double>{1.0});
}

TEST_CASE("chronometrics") {
  const Date origin = fx::d("2000-01-01");
  const Date snap = fx::d("2002-12-31");
  std::vector<Date> none;
  const auto zero = chronometrics_of(origin, none, snap);
  CHECK(zero.age_years == doctest::Approx(years_between(origin, snap)));
  CHECK(zero.growth_slope == 0.0);
  CHECK(zero.latency_to_peak_years == 0);
  CHECK(zero.decay_rate == 0.0);

  // annual counts [1, 2, 3]
  std::vector<Date> rising = {fx::d("2000-03-01"), fx::d("2001-03-01"), fx::d("2001-04-01"),
                              fx::d("2002-03-01"), fx::d("2002-04-01"), fx::d("2002-05-01")};
  CHECK(annual_counts(origin, rising, snap) == std::vector<std::int64_t>{1, 2, 3});
  const auto r = chronometrics_of(origin, rising, snap);
  CHECK(r.growth_slope == doctest::Approx(1.0));
  CHECK(r.latency_to_peak_years == 2);

  // [0, 4, 4]: the earliest peak wins
  std::vector<Date> plateau(4, fx::d("2001-02-01"));
  plateau.insert(plateau.end(), 4, fx::d("2002-02-01"));
  CHECK(chronometrics_of(origin, plateau, snap).latency_to_peak_years == 1);

  // [8, 4, 2, 1]: halving each year decays at ln 2
  std::vector<Date> decay;
  const int counts[] = {8, 4, 2, 1};
  for (int y = 0; y < 4; ++y)
    for (int k = 0; k < counts[y]; ++k) decay.push_back(make_date(2000 + y, 6, 1));
  const auto dm = chronometrics_of(origin, decay, fx::d("2003-12-31"));
  CHECK(dm.latency_to_peak_years == 0);
  CHECK(dm.decay_rate == doctest::Approx(std::log(2.0)));
  CHECK(dm.growth_slope < 0.0);
}

TEST_CASE("download counts by months since publication") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").author("X", "U");
  b.paper("p", "bio", "2000-01-15", {"X"});
  b.paper("q", "bio", "2000-01-15", {"X"});
  b.download("p", "2000-02-20").download("p", "2000-06-20").download("p", "2000-08-20");
  const Corpus c = b.build();
  CHECK(download_count(c, "q", {0, 6}) == 0);
  CHECK(download_count(c, "p", {0, 6}) == 2);  // months 1 and 5
  CHECK(download_count(c, "p", {0, std::nullopt}) == 3);
  CHECK(download_count(c, "p", {6, std::nullopt}) == 1);
}

TEST_CASE("endogamy is the same-discipline share of incident edges") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").author("X", "U");
  b.paper("p", "bio", "2001-01-01", {"X"}, {"b1", "c1"});
  b.paper("b1", "bio", "2000-01-01", {"X"});
  b.paper("c1", "chem", "2000-01-01", {"X"});
  b.paper("b2", "bio", "2002-01-01", {"X"}, {"p"});
  b.paper("c2", "chem", "2002-01-01", {"X"}, {"p"});
  b.paper("lonely", "bio", "2002-01-01", {"X"});
  b.paper("allbio", "bio", "2003-01-01", {"X"}, {"b1", "b2"});
  const Corpus c = b.build();
  CHECK(*endogamy(c, paper_entity("p")) == doctest::Approx(0.5));
  CHECK(*endogamy(c, paper_entity("allbio")) == doctest::Approx(1.0));
  CHECK_FALSE(endogamy(c, paper_entity("lonely")).has_value());
}

TEST_CASE("coauthorship counts distinct co-authors") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").unit("V", "bio");
  b.author("A", "U").author("S", "U").author("X", "V").author("Y", "V");
  b.paper("p1", "bio", "2000-01-01", {"A", "X"});
  b.paper("p2", "bio", "2001-01-01", {"A", "X", "Y"});
  b.paper("p3", "bio", "2001-01-01", {"S"});
  const Corpus c = b.build();
  CHECK(coauthorship_score(c, author_ref("S")) == 0.0);
  CHECK(coauthorship_score(c, author_ref("A")) == 2.0);
  CHECK(coauthorship_score(c, unit_ref("U")) == doctest::Approx(1.0));
  CHECK_THROWS_AS(coauthorship_score(c, paper_entity("p1")), Error);
}

TEST_CASE("textual proximity is the cosine of term frequencies") {
  const std::vector<std::string> ab = {"a", "b"}, ac = {"a", "c"}, xy = {"x", "y"};
  CHECK(*cosine_similarity(ab, ab) == doctest::Approx(1.0));
  CHECK(*cosine_similarity(ab, xy) == 0.0);
  CHECK(*cosine_similarity(ab, ac) == doctest::Approx(0.5));
  const std::vector<std::string> aab = {"a", "a", "b", "b"};
  CHECK(*cosine_similarity(ab, aab) == doctest::Approx(1.0));
  CHECK_FALSE(cosine_similarity(ab, {}).has_value());

  fx::CorpusBuilder b;
  b.journal("J1").unit("U", "bio").author("X", "U");
  b.paper("p", "bio", "2000-01-01", {"X"}).tokens("p", ab);
  b.paper("q", "bio", "2000-01-01", {"X"}).tokens("q", ac);
  b.paper("r", "bio", "2000-01-01", {"X"});
  const Corpus c = b.build();
  CHECK(*textual_proximity(c, "p", "q") == doctest::Approx(0.5));
  CHECK_FALSE(textual_proximity(c, "p", "r").has_value());
}

TEST_CASE("metric matrix values equal the individual operations") {
  fx::CorpusBuilder b;
  b.journal("J1");
  b.unit("U1", "bio", 1e5, 10).unit("U2", "bio", 2e5, 4).unit("U3", "bio", 3e5, 7);
  b.unit("V1", "chem", 5e4, 1);
  b.author("a1", "U1").author("a2", "U1").author("a3", "U2").author("a4", "U3").author("c1", "V1");
  b.paper("P1", "bio", "2000-01-01", {"a1", "a2"});
  b.paper("P2", "bio", "2001-01-01", {"a1"}, {"P1"});
  b.paper("P3", "bio", "2002-01-01", {"a3"}, {"P1", "P2"});
  b.paper("P4", "bio", "2003-01-01", {"a4", "a3"}, {"P1", "P3"});
  b.paper("P5", "chem", "2003-06-01", {"c1"}, {"P4"});
  const Corpus c = b.build();

  const std::vector<std::string> names = {"citation_count", "h_index", "prior_funding",
                                          "student_count", "publication_count", "coauthorship",
                                          "endogamy"};
  const auto m = build_metric_matrix(c, "bio", Level::unit, names);
  CHECK(m.row_ids == std::vector<std::string>{"U1", "U2", "U3"});
  CHECK(m.metric_names == names);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const EntityRef e{Level::unit, m.row_ids[r]};
    const auto& unit = c.unit(*c.find_unit(m.row_ids[r]));
    CAPTURE(m.row_ids[r]);
    CHECK(*m.at(r, 0) == static_cast<double>(citation_count(c, e)));
    CHECK(*m.at(r, 1) == static_cast<double>(h_index(c, e)));
    CHECK(*m.at(r, 2) == unit.prior_funding);
    CHECK(*m.at(r, 3) == static_cast<double>(unit.student_count));
    CHECK(*m.at(r, 4) == static_cast<double>(publication_count(c, e)));
    CHECK(*m.at(r, 5) == coauthorship_score(c, e));
    CHECK(m.at(r, 6) == endogamy(c, e));
  }

  // paper-level metrics are averaged over submitted papers
  const std::vector<std::string> pr = {"pagerank"};
  const auto pm = build_metric_matrix(c, "bio", Level::unit, pr);
  const auto ranks = corpus_pagerank(c).rank;
  const double u1 = (ranks[*c.find_paper("P1")] + ranks[*c.find_paper("P2")]) / 2.0;
  CHECK(*pm.at(0, 0) == doctest::Approx(u1).epsilon(1e-12));
}

TEST_CASE("metric matrix shapes and errors") {
  fx::CorpusBuilder b;
  b.journal("J1").unit("U1", "bio", 1.0, 1).author("a", "U1");
  b.paper("P1", "bio", "2000-01-01", {"a"});
  const Corpus c = b.build();
  const std::vector<std::string> one = {"citation_count"};
  const auto m = build_metric_matrix(c, "bio", Level::unit, one);
  CHECK(m.rows() == 1);
  CHECK(m.cols() == 1);
  CHECK(m.to_csv() == "row_id,citation_count\nU1,0\n");

  const std::vector<std::string> foo = {"citation_count", "foo"};
  try {
    build_metric_matrix(c, "bio", Level::unit, foo);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
  }
  CHECK_THROWS_AS(build_metric_matrix(c, "chem", Level::unit, one), Error);

  // the full catalog is used when no metrics are named
  const auto full = build_metric_matrix(c, "bio", Level::unit);
  CHECK(full.metric_names == metric_catalog(Level::unit));
  CHECK(is_known_metric("h_index"));
  CHECK_FALSE(is_known_metric("foo"));
}

TEST_CASE("missing cells export as empty CSV fields") {
  MetricMatrix m;
  m.row_ids = {"U1", "U2"};
  m.metric_names = {"x", "y"};
  m.values = {1.5, std::nullopt, 1.0 / 3.0, 2.0};
  CHECK(m.to_csv() == "row_id,x,y\nU1,1.5,\nU2,0.333333333,2\n");
}
