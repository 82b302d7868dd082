#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ganlab {

/// Distribution on a finite alphabet {0, ..., k-1}.
class FiniteDist {
 public:
  explicit FiniteDist(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  int alphabet() const { return static_cast<int>(probs_.size()); }

 private:
  std::vector<double> probs_;
};

/// Total variation distance (1/2) sum |p - q| in [0, 1].
double tv_finite(const FiniteDist& p, const FiniteDist& q);

/// The IPM over test functions bounded by one, sum |p - q| = 2 TV. All
/// bounds in this module are stated on this scale: witnesses take values
/// in {-1, +1}, so sup_f integral f d(P - Q) over the full witness class
/// equals ipm_full.
double ipm_full(const FiniteDist& p, const FiniteDist& q);

/// Finite discriminator class: witness vectors over the alphabet with
/// entries in [-1, 1], tagged with the covering pair that produced them.
struct DiscriminatorSet {
  std::vector<std::vector<double>> functions;
  std::vector<std::pair<int, int>> provenance;  // covering-member indices (i, j)
  std::vector<int> net;                         // indices of net members
};

/// Greedy farthest-point eps-net of the generator list under ipm_full, plus
/// the optimal sign witness for every ordered net pair. eps is on the
/// ipm_full (= 2 TV) scale. Identical witnesses are deduplicated.
DiscriminatorSet build_covering_discriminators(const std::vector<FiniteDist>& generators,
                                               double eps);

/// Weakened IPM: max over witnesses of sum_x f(x) (p_x - q_x); zero for an
/// empty witness set.
double weakened_ipm(const DiscriminatorSet& dset, const FiniteDist& p,
                    const FiniteDist& q);

struct FiniteProjection {
  int index;              // argmin generator (lowest index on ties)
  double objective;       // weakened_ipm at the argmin
  double runner_up_gap;   // second-best objective minus best (0 if single)
};

/// Exhaustive projection of `target` onto the generator list under the
/// weakened IPM.
FiniteProjection project_weakened(const DiscriminatorSet& dset,
                                  const std::vector<FiniteDist>& generators,
                                  const FiniteDist& target);

using FiniteDistance = std::function<double(const FiniteDist&, const FiniteDist&)>;

struct AdmissibleCert {
  double c1 = 1.0;
  double c2 = 0.0;
};

struct BoundReport {
  double opt;             // min_g L(g, target)
  double achieved;        // L(g_hat, target) for the surrogate argmin g_hat
  double bound;           // (1 + 2 c1) opt + 2 c1 Lpp(target, target_hat) + c2
  double slack;           // bound - achieved (>= 0 when the bound holds)
  int chosen;             // surrogate argmin index
  bool premises_ok;       // Definition-style resolution/robustness checks
  std::string premise_note;
};

/// Brute-force check of the projection oracle inequality
///   L(g_hat, target) <= (1 + 2 c1) OPT + 2 c1 Lpp(target, target_hat) + c2
/// where g_hat = argmin_g Lp(g, target_hat). Also verifies the two
/// admissibility premises on the instance; a premise failure is reported
/// via CertificateViolated rather than silently passed through.
BoundReport verify_projection_bound(const FiniteDistance& L, const FiniteDistance& Lp,
                                    const FiniteDistance& Lpp,
                                    const std::vector<FiniteDist>& generators,
                                    const FiniteDist& target,
                                    const FiniteDist& target_hat,
                                    const AdmissibleCert& cert);

}  // namespace ganlab
