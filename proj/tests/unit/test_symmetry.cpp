#include <doctest.h>

#include <algorithm>
#include <set>

#include "cqm/symmetry.hpp"

using namespace cqm::symmetry;

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All ordered k-tuples of pair indices, reduced to sorted multisets.
std::set<std::vector<int>> brute_force(int k, bool neutral_only) {
  std::set<std::vector<int>> out;
  int total = 1;
  for (int i = 0; i < k; ++i) total *= 4;
  for (int code = 0; code < total; ++code) {
    std::vector<int> idx;
    int c = code, sum = 0;
    for (int i = 0; i < k; ++i) {
      idx.push_back(c % 4);
      sum += all_qpairs()[static_cast<std::size_t>(c % 4)].thirds();
      c /= 4;
    }
    if (neutral_only && sum != 0) continue;
    std::sort(idx.begin(), idx.end());
    out.insert(idx);
  }
  return out;
}

std::vector<int> indices(const Composition& c) {
  std::vector<int> v;
  for (const auto& p : c.pairs()) v.push_back(canonical_index(p));
  return v;
}

}  // namespace

TEST_CASE("four q-pairs with zero total") {
  const auto& all = all_qpairs();
  CHECK(all.size() == 4);
  int sum = 0;
  for (const auto& p : all) sum += p.thirds();
  CHECK(sum == 0);
  CHECK(all[0].render() == "(+,+)");
  CHECK(all[3].render() == "(-,+)");
}

TEST_CASE("enumeration matches brute force") {
  for (int k = 1; k <= 4; ++k) {
    const auto every = enumerate_compositions(k, false);
    CHECK(static_cast<long>(every.size()) == binomial(4 + k - 1, k));
    for (bool neutral : {false, true}) {
      const auto comps = enumerate_compositions(k, neutral);
      std::set<std::vector<int>> got;
      for (const auto& c : comps) got.insert(indices(c));
      CHECK(got.size() == comps.size());  // no duplicates
      CHECK(got == brute_force(k, neutral));
    }
  }
  CHECK(enumerate_compositions(2, true).size() == 4);
  CHECK(enumerate_compositions(3, true).size() == 6);
  CHECK_THROWS_AS(enumerate_compositions(5, false), std::invalid_argument);
}

TEST_CASE("enumeration order is canonical and stable") {
  const auto a = enumerate_compositions(3, false);
  const auto b = enumerate_compositions(3, false);
  CHECK(a == b);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(indices(a[i - 1]) < indices(a[i]));
}

TEST_CASE("named compositions are neutral; other neutral ones are admissible") {
  int named = 0;
  for (int k = 1; k <= 4; ++k)
    for (const auto& c : enumerate_compositions(k, true))
      if (is_named_hadron_set(c)) ++named;
  CHECK(named == 5);
  const Composition baryon({QPair{QSign::Plus, QSign::Minus}, QPair{QSign::Minus, QSign::Minus},
                            QPair{QSign::Plus, QSign::Plus}});
  CHECK(is_q_neutral(baryon));
  CHECK(is_named_hadron_set(baryon));
  CHECK(baryon.kind() == CompositionKind::Baryon);
  const Composition admissible({QPair{QSign::Plus, QSign::Minus}, QPair{QSign::Minus, QSign::Plus},
                                QPair{QSign::Plus, QSign::Minus}});
  CHECK(is_q_neutral(admissible));
  CHECK_FALSE(is_named_hadron_set(admissible));
  CHECK(Composition({QPair{QSign::Plus, QSign::Plus}}).kind() == CompositionKind::Single);
}

TEST_CASE("composition is a multiset: order of pairs does not matter") {
  const QPair pp{QSign::Plus, QSign::Plus}, mm{QSign::Minus, QSign::Minus};
  CHECK(Composition({pp, mm}) == Composition({mm, pp}));
  CHECK(Composition({mm, pp}).render() == "[(+,+), (-,-)]");
}

TEST_CASE("labels round-trip") {
  for (const char* text : {"u(+,-)", "d(-,-)", "s(+,+)", "t(-,+)"}) {
    const auto q = QuarkLabel::parse(text);
    REQUIRE(q);
    CHECK(q->render() == text);
  }
  CHECK(QuarkLabel::parse("u(+,-)")->charge == doctest::Approx(2.0 / 3.0));
  CHECK(QuarkLabel::parse("d(+,-)")->charge == doctest::Approx(-1.0 / 3.0));
  CHECK_FALSE(QuarkLabel::parse("x(+,-)"));
  CHECK_FALSE(QuarkLabel::parse("u(+-)"));
  CHECK_FALSE(QuarkLabel::parse("(+,-)"));
  CHECK_FALSE(QPair::parse("(+,*)"));
}

TEST_CASE("proton configurations") {
  const auto protons = proton_configurations();
  REQUIRE(protons.size() == 2);
  for (const auto& cfg : protons) {
    REQUIRE(cfg.size() == 3);
    double charge = 0.0;
    std::vector<QPair> pairs;
    int zero_sum = 0;
    for (const auto& q : cfg) {
      charge += q.charge;
      pairs.push_back(q.pair);
      if (q.pair.thirds() == 0) ++zero_sum;
    }
    CHECK(charge == doctest::Approx(1.0).epsilon(1e-14));
    const Composition comp(pairs);
    CHECK(is_q_neutral(comp));
    CHECK(is_named_hadron_set(comp));
    CHECK(zero_sum == 1);
  }
  CHECK(protons[0][0].render() == "u(-,-)");
  CHECK(protons[1][2].render() == "d(-,-)");
}
