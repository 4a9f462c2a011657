#pragma once

// q-pair bookkeeping: each quark carries an ordered pair of seed charges
// (+-1/3, +-1/3); hadrons form from q-neutral multisets of pairs.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqm::symmetry {

enum class QSign { Plus, Minus };

struct QPair {
  QSign first = QSign::Plus;
  QSign second = QSign::Plus;

  /// Sum of both q values in units of 1/3: +2, 0 or -2.
  int thirds() const;
  std::string render() const;  ///< "(+,-)"
  static std::optional<QPair> parse(std::string_view text);

  friend bool operator==(const QPair&, const QPair&) = default;
};

/// (+,+), (-,-), (+,-), (-,+), in that canonical order.
const std::array<QPair, 4>& all_qpairs();
int canonical_index(const QPair& p);

/// Quark with flavour tag, charge b and q-pair, rendered "u(+,-)".
struct QuarkLabel {
  std::string flavor;
  double charge = 0.0;
  QPair pair;

  std::string render() const;
  /// Charge is taken from the flavour (up-type +2/3, down-type -1/3).
  static std::optional<QuarkLabel> parse(std::string_view text);

  friend bool operator==(const QuarkLabel&, const QuarkLabel&) = default;
};

/// +2/3 for u, c, t and -1/3 for d, s, b, from the gamma^2 = 4, q = 1/3 roots.
std::optional<double> flavor_charge(std::string_view flavor);

enum class CompositionKind { Single, Meson, Baryon, Other };
const char* to_string(CompositionKind k) noexcept;

/// Multiset of q-pairs, kept sorted in canonical order.
class Composition {
 public:
  explicit Composition(std::vector<QPair> pairs);

  const std::vector<QPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  CompositionKind kind() const;
  int thirds() const;
  std::string render() const;  ///< "[(+,+), (-,-)]"

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<QPair> pairs_;
};

/// Zero sum of all individual q values.
bool is_q_neutral(const Composition& c);

/// Every multiset of `size` pairs (1..4), repetition allowed, in canonical
/// lexicographic order; optionally only the q-neutral ones.
std::vector<Composition> enumerate_compositions(int size, bool neutral_only);

/// Whether the composition is one of the explicitly named hadron sets
/// (the two baryon triples, the two meson pairs, and all four pairs).
bool is_named_hadron_set(const Composition& c);

/// The two alternating proton configurations.
std::vector<std::vector<QuarkLabel>> proton_configurations();

}  // namespace cqm::symmetry
