#include "cqm/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

#include "cqm/charges.hpp"

namespace cqm::symmetry {

namespace {

char sign_char(QSign s) { return s == QSign::Plus ? '+' : '-'; }

std::optional<QSign> parse_sign(char c) {
  if (c == '+') return QSign::Plus;
  if (c == '-') return QSign::Minus;
  return std::nullopt;
}

const QPair kPP{QSign::Plus, QSign::Plus};
const QPair kMM{QSign::Minus, QSign::Minus};
const QPair kPM{QSign::Plus, QSign::Minus};
const QPair kMP{QSign::Minus, QSign::Plus};

}  // namespace

int QPair::thirds() const {
  return (first == QSign::Plus ? 1 : -1) + (second == QSign::Plus ? 1 : -1);
}

std::string QPair::render() const {
  return std::string{'(', sign_char(first), ',', sign_char(second), ')'};
}

std::optional<QPair> QPair::parse(std::string_view text) {
  if (text.size() != 5 || text[0] != '(' || text[2] != ',' || text[4] != ')') return std::nullopt;
  const auto a = parse_sign(text[1]);
  const auto b = parse_sign(text[3]);
  if (!a || !b) return std::nullopt;
  return QPair{*a, *b};
}

const std::array<QPair, 4>& all_qpairs() {
  static const std::array<QPair, 4> pairs{kPP, kMM, kPM, kMP};
  return pairs;
}

int canonical_index(const QPair& p) {
  const auto& all = all_qpairs();
  return static_cast<int>(std::find(all.begin(), all.end(), p) - all.begin());
}

std::optional<double> flavor_charge(std::string_view flavor) {
  const auto roots = charges::solve_coulomb_charge({1.0 / 3.0, -2.0, charges::Branch::Minus});
  if (flavor == "u" || flavor == "c" || flavor == "t") return roots.b_plus;
  if (flavor == "d" || flavor == "s" || flavor == "b") return roots.b_minus;
  return std::nullopt;
}

std::string QuarkLabel::render() const { return flavor + pair.render(); }

std::optional<QuarkLabel> QuarkLabel::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || open == 0) return std::nullopt;
  const auto pair = QPair::parse(text.substr(open));
  const auto flavor = text.substr(0, open);
  const auto charge = flavor_charge(flavor);
  if (!pair || !charge) return std::nullopt;
  return QuarkLabel{std::string(flavor), *charge, *pair};
}

const char* to_string(CompositionKind k) noexcept {
  switch (k) {
    case CompositionKind::Single: return "single";
    case CompositionKind::Meson: return "meson";
    case CompositionKind::Baryon: return "baryon";
    case CompositionKind::Other: return "other";
  }
  return "other";
}

Composition::Composition(std::vector<QPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(),
            [](const QPair& a, const QPair& b) { return canonical_index(a) < canonical_index(b); });
}

CompositionKind Composition::kind() const {
  switch (pairs_.size()) {
    case 1: return CompositionKind::Single;
    case 2: return CompositionKind::Meson;
    case 3: return CompositionKind::Baryon;
    default: return CompositionKind::Other;
  }
}

int Composition::thirds() const {
  int sum = 0;
  for (const auto& p : pairs_) sum += p.thirds();
  return sum;
}

std::string Composition::render() const {
  std::string out = "[";
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) out += ", ";
    out += pairs_[i].render();
  }
  return out + "]";
}

bool is_q_neutral(const Composition& c) { return c.thirds() == 0; }

std::vector<Composition> enumerate_compositions(int size, bool neutral_only) {
  if (size < 1 || size > 4) throw std::invalid_argument("enumerate_compositions: size must be 1..4");
  std::vector<Composition> out;
  std::vector<int> idx(static_cast<std::size_t>(size), 0);
  const auto& all = all_qpairs();
  // Non-decreasing index tuples enumerate multisets exactly once.
  for (;;) {
    std::vector<QPair> pairs;
    for (int i : idx) pairs.push_back(all[static_cast<std::size_t>(i)]);
    Composition c(std::move(pairs));
    if (!neutral_only || is_q_neutral(c)) out.push_back(std::move(c));
    int pos = size - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == 3) --pos;
    if (pos < 0) break;
    const int next = idx[static_cast<std::size_t>(pos)] + 1;
    for (int j = pos; j < size; ++j) idx[static_cast<std::size_t>(j)] = next;
  }
  return out;
}

bool is_named_hadron_set(const Composition& c) {
  static const std::vector<Composition> named{
      Composition({kPP, kMM, kPM}), Composition({kPP, kMM, kMP}), Composition({kPP, kMM}),
      Composition({kPM, kMP}),      Composition({kPP, kMM, kPM, kMP}),
  };
  return std::find(named.begin(), named.end(), c) != named.end();
}

std::vector<std::vector<QuarkLabel>> proton_configurations() {
  const double up = *flavor_charge("u");
  const double down = *flavor_charge("d");
  return {
      {{"u", up, kMM}, {"u", up, kPM}, {"d", down, kPP}},
      {{"u", up, kMP}, {"u", up, kPP}, {"d", down, kMM}},
  };
}

}  // namespace cqm::symmetry
