#pragma once

#include "critreg/feasibility.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace critreg::lamp {

struct Seg {
  double lo = 0.0, hi = 0.0;
  double len() const { return hi - lo; }
};

// Raw (unscaled) block length: 1/((|i|+1)^p + |j|^q + |k|^r) away from the
// i = 0 level, 1/((|j|+1)^q' + |k|^r) on it.
double raw_block_length(const Params& par, int i, int j, int k);

// Three-level interval family: blocks indexed by (i,j,k) with max-norm <= N,
// grouped into columns (fixed i,j) and levels (fixed i). The truncated tail
// mass of each scope sits in gap intervals at that scope's two ends (per
// column, per level, and globally), so the per-column shift generator stays a
// homeomorphism. Within a column, consecutive blocks share endpoints.
class Structure3 {
 public:
  static Structure3 build(const Params& params, int N);

  int n() const { return N_; }
  const Params& params() const { return par_; }
  double scale() const { return scale_; }
  double total_raw() const { return total_raw_; }

  // raw (unscaled) block length; the formula extends past the truncation
  double raw_len(int i, int j, int k) const;

  Seg block(int i, int j, int k) const;
  Seg column(int i, int j) const;  // gap pair included
  Seg level(int i) const;          // gap pair included
  double col_gap(int i, int j) const;  // one-sided column gap mass
  double lev_gap(int i) const;         // one-sided level gap mass
  Seg global_gap_l() const { return {0.0, glob_gap_}; }
  Seg global_gap_r() const { return {1.0 - glob_gap_, 1.0}; }

 private:
  int N_ = 0;
  Params par_;
  double scale_ = 1.0, total_raw_ = 0.0, glob_gap_ = 0.0;
  std::vector<double> len_;      // scaled block lengths
  std::vector<double> blo_;      // block left endpoints
  std::vector<double> cgap_;     // one-sided column gap (scaled)
  std::vector<double> clo_;      // column left endpoints
  std::vector<double> lgap_;     // one-sided level gap (scaled)
  std::vector<double> llo_;      // level left endpoints
  size_t bidx(int i, int j, int k) const;
  size_t cidx(int i, int j) const;
  size_t lidx(int i) const;
};

// Smooth block diffeomorphism src -> dst with prescribed endpoint
// derivatives: the derivative is exp of a cubic-smoothstep blend between the
// endpoint log-derivatives plus a bump correction solved so the integral
// matches the target length. Values/derivatives are exact up to quadrature.
class Profile {
 public:
  Profile() = default;
  Profile(Seg src, Seg dst, double d0, double d1);
  double operator()(double x) const;
  double deriv(double x) const;
  double inverse(double y) const;
  const Seg& src() const { return src_; }
  const Seg& dst() const { return dst_; }
  double correction() const { return c_; }

 private:
  Seg src_, dst_;
  double ld0_ = 0.0, ld1_ = 0.0, c_ = 0.0, norm_ = 1.0;
  double weight(double xi) const;
  double phi(double xi) const;  // normalized cumulative weight on [0,1]
};

// Monotone homeomorphism of [0,1] assembled from affine pieces and block
// chart transitions. A chart piece maps its block onto the image block
// through normalized [0,1] profiles: f = unrescale ∘ ψ_dst⁻¹ ∘ ψ_src ∘
// rescale. Since every generator restriction is such a transition of one
// shared chart family, compositions telescope and the generators commute
// blockwise up to roundoff.
class BlockMap {
 public:
  struct Piece {
    enum class Kind { Identity, Affine, Chart } kind = Kind::Identity;
    double lo = 0.0, hi = 1.0;  // domain
    double img_lo = 0.0, img_hi = 1.0;
    double slope = 1.0;  // affine
    const Profile* chart_src = nullptr;
    const Profile* chart_dst = nullptr;
  };

  double operator()(double x) const;
  double deriv(double x) const;
  double inverse(double y) const;

  const std::vector<Piece>& pieces() const { return pieces_; }

  // assembly (pieces must be appended in increasing domain order and tile [0,1])
  void add_identity(double lo, double hi);
  void add_affine(double lo, double hi, double img_lo, double img_hi);
  void add_chart(Seg domain, Seg image, const Profile* src, const Profile* dst);
  void finish();  // validates the tiling

 private:
  std::vector<Piece> pieces_;
  size_t find_piece(double x) const;
  size_t find_piece_by_image(double y) const;
};

// Prescribed endpoint-derivative table entry for one generator on one block.
struct BlockDerivs {
  double d_lo = 1.0, d_hi = 1.0;
};

// The constructed action: t shifts k within every column, a shifts i, b
// shifts j inside level 0 only and is the identity outside it. Every block
// restriction is a chart transition with chart endpoint derivatives
// ψ_v'(0) = |I_v|/|I_{v-e3}| and ψ_v'(1) = 1, which realizes the prescribed
// generator endpoint derivatives and makes a and b commute with t blockwise
// within the truncation-valid region.
class ConstructedAction {
 public:
  static ConstructedAction build(const Params& params, int N);

  const Structure3& structure() const { return st_; }
  const BlockMap& t() const { return *t_; }
  const BlockMap& a() const { return *a_; }
  const BlockMap& b() const { return *b_; }

  BlockDerivs prescribed_t(int i, int j, int k) const;
  BlockDerivs prescribed_a(int i, int j, int k) const;  // i < N
  BlockDerivs prescribed_b(int j, int k) const;         // level 0, j < N

  std::string blocks_csv() const;

 private:
  explicit ConstructedAction(Structure3 st) : st_(std::move(st)) {}
  Structure3 st_;
  std::vector<Profile> charts_;  // one normalized chart per block
  std::unique_ptr<BlockMap> t_, a_, b_;
};

struct CommutationReport {
  double max_dev_at = 0.0;    // [a,t]
  double max_dev_bt = 0.0;    // [b,t]
  double max_dev_lamp = 0.0;  // [a^m b a^-m, b], 1 <= m <= 3
  int samples = 0;
};
CommutationReport verify_commutations(const ConstructedAction& act, int sample_count);

struct LogLipschitzReport {
  double worst_ratio = 0.0;  // estimate / (M/|I_u|) |ratio - 1|, over bound>0 blocks
  double empirical_m = 0.0;  // max over blocks of L |I_u| / |ratio - 1|
  int blocks = 0;
};
LogLipschitzReport check_log_deriv_lipschitz(const ConstructedAction& act, double m_estimate,
                                             int grid_per_block = 24);

struct NestedSupportReport {
  bool nested = true;
  Seg supp_b{};  // level-0 interior
  Seg j2{};      // a component of supp t with closure inside supp b
};
NestedSupportReport nested_support_check(const ConstructedAction& act);
NestedSupportReport nested_support_check(const Structure3& st, const BlockMap& a,
                                         const BlockMap& b, const BlockMap& t);

// Derivative samples over the truncation-valid interior (blocks of max-norm
// < N), grouped by column so Hölder pair scans stay on one side of the gaps.
std::vector<std::vector<std::pair<double, double>>> valid_region_deriv_samples(
    const ConstructedAction& act, const BlockMap& g, int per_block = 16);

// Max per-column Hölder estimate of the derivative of g.
double sampled_deriv_holder(const ConstructedAction& act, const BlockMap& g, double tau,
                            int per_block = 16);

// ---------------------------------------------------------------------------
// Two-level structure (indices (i,k), lengths 1/((|i|+1)^p + |k|^r)): the
// commuting pair (a,t) used by the sequence diagnostics.
class TwoLevelPair {
 public:
  static TwoLevelPair build(double p, double r, int N);

  int n() const { return N_; }
  Seg block(int i, int k) const;
  Seg column(int i) const;
  const BlockMap& t() const { return *t_; }
  const BlockMap& a() const { return *a_; }
  double raw_len(int i, int k) const;

 private:
  TwoLevelPair() = default;
  int N_ = 0;
  double p_ = 0.0, r_ = 0.0, scale_ = 1.0;
  std::vector<double> len_, blo_, cgap_, clo_;
  double glob_gap_ = 0.0;
  std::vector<Profile> charts_;
  std::unique_ptr<BlockMap> t_, a_;
  size_t bidx(int i, int k) const;
};

}  // namespace critreg::lamp
