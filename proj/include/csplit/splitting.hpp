#pragma once

#include <array>
#include <optional>
#include <string>

#include "csplit/context.hpp"
#include "csplit/corpus.hpp"

namespace csplit {

/// A map of split short exact sequences
///
///   0 -> X' -i'-> Y' -p'-> Z' -> 0
///        |f      |g      |h
///   0 -> X  -i-> Y  -p-> Z  -> 0
///
/// with optional row-splitting witnesses.
struct SplitDiagram {
  ModuleMorphism f, g, h;
  ModuleMorphism i_top, p_top, i_bot, p_bot;
  std::optional<ModuleMorphism> r_top, r_bot;  // retractions: r i = id
  std::optional<ModuleMorphism> s_top, s_bot;  // sections: p s = id

  std::size_t total_dim() const { return g.source().dim() + g.target().dim(); }
};

/// Empty when the rows are exact, the squares commute and the supplied witnesses verify.
std::optional<std::string> diagram_defect(const SplitDiagram& d);

/// Retractions for both rows: supplied ones, else derived from supplied sections,
/// else computed. Throws InvalidInput ("row does not split") when a row is not split.
std::pair<ModuleMorphism, ModuleMorphism> row_retractions(const SplitDiagram& d);

/// Sha^1(h, f) = coker(Hom(Z', X') (+) Hom(Z, X) -> Hom(Z', X), (a, b) -> f a - b h).
struct Sha1Cokernel {
  HomSpace hom;                // Hom(Z', X)
  HomSpace hom_left;           // Hom(Z', X')
  HomSpace hom_right;          // Hom(Z, X)
  Matrix boundary;             // (a, b) -> f a - b h in hom coordinates
  QuotientPresentation quotient;

  std::size_t dim() const { return quotient.dim(); }
  /// Class coordinates of an intertwiner Z' -> X.
  Matrix class_of(const ModuleMorphism& u) const;
};
Sha1Cokernel sha1_cokernel(const ModuleMorphism& h, const ModuleMorphism& f);

struct Obstruction {
  ModuleMorphism u;  // Z' -> X with u p' = r0 g - f r0'
  Matrix coords;
  bool vanishes = false;
};

struct SplittingCertificate {
  ModuleMorphism r_top, r_bot, s_top, s_bot;

  /// Empty when every retraction, section and compatibility identity holds exactly.
  std::optional<std::string> defect(const SplitDiagram& d) const;
};

struct SplitDecision {
  Obstruction obstruction;
  std::size_t sha_dim = 0;
  std::optional<SplittingCertificate> certificate;

  bool splits() const { return certificate.has_value(); }
};

/// Throws InvalidInput on an invalid diagram. The class is recomputed from a second
/// pair of witnesses when one exists; disagreement throws InvariantViolation.
Obstruction obstruction_class(const SplitDiagram& d);
SplitDecision decide_compatible_split(const SplitDiagram& d);

struct OracleResult {
  enum class Verdict { kExists, kNone, kRefused };
  Verdict verdict = Verdict::kRefused;
  std::size_t space_dim = 0;     // dim of the retraction spaces enumerated (top + bottom)
  std::size_t pairs_tested = 0;
  std::optional<std::pair<ModuleMorphism, ModuleMorphism>> witness;  // (r', r)
  std::string detail;
};
/// Enumerates every pair of retractions (r', r) and tests f r' = r g. Only over F_2
/// and F_3, and only while the enumeration space has dimension <= max_space_dim.
OracleResult brute_force_oracle(const SplitDiagram& d, std::size_t max_space_dim = 16);

/// 0 -> Sha^t -> Ext^t_T(f, g) -> Ext^t(X, V) x Ext^t(Y, W) -> Ext^t(X, W) -> Sha^{t+1} -> 0
/// for arrows f: X -> Y and g: V -> W.
struct DualityReport {
  std::size_t t = 0;
  /// Sha^t, Ext^t_T(f, g), Ext^t(X, V), Ext^t(Y, W), Ext^t(X, W), Sha^{t+1}.
  std::array<std::size_t, 6> dims{};
  /// Exactness at Sha^t, Ext^t_T, the product, Ext^t(X, W), Sha^{t+1}.
  std::array<bool, 5> exact{};
  bool alternating_sum_zero = false;
  /// dim Ext^t(X, W) - rank of the pairing map.
  std::size_t sha_next_from_sequence = 0;

  bool holds() const;
  std::string describe() const;
};
DualityReport duality_sequence(const ArrowContext& ctx, const ArrowObject& f, const ArrowObject& g, std::size_t t);

/// Split diagrams over the generator's algebra with total dimension <= max_total:
/// Y' = X' (+) Z', Y = X (+) Z, g = [[f, u], [0, h]], with rows conjugated by random
/// invertible basis changes and a random choice of supplied witnesses.
SplitDiagram random_split_diagram(CorpusGenerator& gen, std::size_t max_total);

/// The smallest diagram that cannot be compatibly split, over the field F_p: top row
/// 0 -> 0 -> k -id-> k -> 0, bottom row 0 -> k -id-> k -> 0 -> 0, g = id_k.
SplitDiagram intro_diagram(std::uint32_t p);

}  // namespace csplit
