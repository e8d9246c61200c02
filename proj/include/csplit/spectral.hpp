#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csplit/context.hpp"

namespace csplit {

/// Horseshoe resolution of U for 0 -> V' -i-> U -p-> V'' -> 0 from resolutions of V' and V''.
/// Degree n is Q'_n (+) Q''_n, generators of Q' first. Both inputs need length >= `length`.
FreeResolution horseshoe(const ModuleMorphism& i, const ModuleMorphism& p, const FreeResolution& sub,
                         const FreeResolution& quot, std::size_t length);

/// One page of a truncated first-quadrant cohomological spectral sequence.
struct SSPage {
  std::size_t page = 1;
  std::size_t s_max = 0, t_max = 0;
  /// groups[s][t], in coordinates of the previous page (cochain coordinates on E_1);
  /// nullopt where the group is not determined inside the bounds.
  std::vector<std::vector<std::optional<Subquotient>>> groups;
  /// d[s][t]: E^{s,t} -> E^{s+r, t-r+1} in class coordinates; nullopt where either end
  /// is undetermined or the target leaves the quadrant.
  std::vector<std::vector<std::optional<Matrix>>> d;

  std::optional<std::size_t> dim(std::size_t s, std::size_t t) const;
};

/// The compatible splitting spectral sequence of (Y, X): E_1^{s,t} = Ext^t(U_s, X) over
/// the counit (bar) resolution, computed from a double complex whose columns are
/// horseshoe resolutions of the splices, so its rows are exact.
class SplittingSpectralSequence {
 public:
  /// Bounds must be >= 2. One extra column (s_max + 1) is computed to close E_2 at s_max.
  SplittingSpectralSequence(const SplittingContext& ctx, ModuleRep y, ModuleRep x, std::size_t s_max,
                            std::size_t t_max);

  const SplittingContext* context() const { return ctx_; }
  std::size_t s_max() const { return s_max_; }
  std::size_t t_max() const { return t_max_; }
  const BarResolution& bar() const { return bar_; }
  /// Resolution of U_s used as column s (column 0 is the canonical resolution of Y).
  const FreeResolution& column(std::size_t s) const { return *cols_[s]; }
  const ExtGroup& e1_group(std::size_t s, std::size_t t) const { return *e1_[s][t]; }

  /// Cochain maps of Hom(double complex, X).
  Matrix vertical(std::size_t s, std::size_t t) const;    // C^{s,t} -> C^{s,t+1}
  Matrix horizontal(std::size_t s, std::size_t t) const;  // C^{s,t} -> C^{s+1,t}

  const SSPage& e1() const { return e1_page_; }
  const SSPage& e2() const { return e2_page_; }
  /// d_2 on E_2^{s,t} -> E_2^{s+2,t-1} by the zig-zag; InvalidInput outside the bounds.
  Matrix d2(std::size_t s, std::size_t t) const;

  /// Rows of the double complex after Hom(-, X) are exact inside the bounds.
  bool row_cohomology_vanishes() const;
  /// d_1 o d_1 = 0 wherever composable.
  bool d1_squares_to_zero() const;

 private:
  const SplittingContext* ctx_;
  ModuleRep y_, x_;
  std::size_t s_max_, t_max_;
  BarResolution bar_;
  std::vector<ResolutionPtr> q_;     // resolutions of V_s
  std::vector<ResolutionPtr> cols_;  // resolutions of U_s
  std::vector<std::vector<std::shared_ptr<const ExtGroup>>> e1_;
  SSPage e1_page_, e2_page_;

  std::size_t columns() const { return s_max_ + 2; }
  Matrix horizontal_images(std::size_t s, std::size_t t) const;  // P(U_{s+1})_t -> P(U_s)_t
};

SplittingSpectralSequence e1_page(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x,
                                  std::size_t s_max, std::size_t t_max);

/// Checks on the E_2 page against the obstruction groups.
struct E2Report {
  std::vector<bool> sha_match;   // E_2^{0,t} = Sha^t as subspaces of Ext^t(Y, X)
  bool bottom_zero = false;      // E_2^{0,0} = E_2^{1,0} = 0
  bool column1_zero = false;     // E_2^{1,t} = 0 for t <= t_max
  bool high_columns_zero = false;  // E_2^{s,t} = 0 for 3 <= s <= s_max
  std::string detail;

  /// For hereditary contexts all checks apply; otherwise only the first two.
  bool holds(bool hereditary) const;
};
E2Report e2_page(const SplittingSpectralSequence& ss);

/// d_2 at a corner, with the double complex built from scratch.
Matrix double_complex_d2(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x, std::size_t s,
                         std::size_t t, std::size_t s_max = 3, std::size_t t_max = 2);

struct PositionVerdict {
  enum class State { kZero, kUnverifiable, kNonzero };
  std::size_t s = 0, t = 0;
  std::size_t e2_dim = 0, e3_dim = 0;
  State state = State::kZero;
};

struct CollapseReport {
  std::vector<PositionVerdict> interior;
  std::vector<std::pair<std::size_t, std::size_t>> boundary;
  bool holds = false;  // no interior position has nonzero E_infinity

  std::size_t unverifiable() const;
};
/// E_3 at every position whose d_2 in and out are computable; E_infinity = E_3 unless a
/// higher differential can touch the position.
CollapseReport verify_collapse(const SplittingSpectralSequence& ss);

}  // namespace csplit
