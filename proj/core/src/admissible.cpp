#include "ganlab/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ganlab/error.hpp"

namespace ganlab {

FiniteDist::FiniteDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "empty alphabet");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (p < 0) throw Error(ErrorCode::InvalidDistribution, "negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidDistribution,
                "probabilities sum to " + std::to_string(total));
  }
}

namespace {
void require_same_alphabet(const FiniteDist& p, const FiniteDist& q) {
  if (p.alphabet() != q.alphabet()) {
    throw Error(ErrorCode::AlphabetMismatch, "alphabet size mismatch");
  }
}
}  // namespace

double tv_finite(const FiniteDist& p, const FiniteDist& q) {
  require_same_alphabet(p, q);
  double sum = 0.0;
  for (int x = 0; x < p.alphabet(); ++x) sum += std::abs(p.probs()[x] - q.probs()[x]);
  return 0.5 * sum;
}

double ipm_full(const FiniteDist& p, const FiniteDist& q) {
  return 2.0 * tv_finite(p, q);
}

DiscriminatorSet build_covering_discriminators(const std::vector<FiniteDist>& generators,
                                               double eps) {
  if (generators.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "no generators supplied");
  }
  const int m = static_cast<int>(generators.size());
  DiscriminatorSet out;

  // Greedy farthest-point net: seed with generator 0, keep adding the
  // generator farthest from the net while it is more than eps away.
  std::vector<double> dist_to_net(m, std::numeric_limits<double>::infinity());
  out.net.push_back(0);
  for (int i = 0; i < m; ++i) dist_to_net[i] = ipm_full(generators[i], generators[0]);
  for (;;) {
    int farthest = static_cast<int>(
        std::max_element(dist_to_net.begin(), dist_to_net.end()) - dist_to_net.begin());
    if (dist_to_net[farthest] <= eps) break;
    out.net.push_back(farthest);
    for (int i = 0; i < m; ++i) {
      dist_to_net[i] =
          std::min(dist_to_net[i], ipm_full(generators[i], generators[farthest]));
    }
  }

  // Optimal sign witness for every ordered net pair: +1 where p_i > p_j.
  for (int i : out.net) {
    for (int j : out.net) {
      if (i == j) continue;
      const auto& pi = generators[i].probs();
      const auto& pj = generators[j].probs();
      std::vector<double> f(pi.size());
      for (size_t x = 0; x < pi.size(); ++x) f[x] = pi[x] > pj[x] ? 1.0 : -1.0;
      bool duplicate = false;
      for (const auto& g : out.functions) {
        if (g == f) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        out.functions.push_back(std::move(f));
        out.provenance.emplace_back(i, j);
      }
    }
  }
  return out;
}

double weakened_ipm(const DiscriminatorSet& dset, const FiniteDist& p,
                    const FiniteDist& q) {
  require_same_alphabet(p, q);
  double best = 0.0;
  for (const auto& f : dset.functions) {
    if (static_cast<int>(f.size()) != p.alphabet()) {
      throw Error(ErrorCode::AlphabetMismatch, "witness arity mismatch");
    }
    double val = 0.0;
    for (int x = 0; x < p.alphabet(); ++x) val += f[x] * (p.probs()[x] - q.probs()[x]);
    best = std::max(best, val);
  }
  return best;
}

FiniteProjection project_weakened(const DiscriminatorSet& dset,
                                  const std::vector<FiniteDist>& generators,
                                  const FiniteDist& target) {
  if (generators.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "no generators supplied");
  }
  FiniteProjection out{0, std::numeric_limits<double>::infinity(), 0.0};
  double second = std::numeric_limits<double>::infinity();
  for (int g = 0; g < static_cast<int>(generators.size()); ++g) {
    double val = weakened_ipm(dset, generators[g], target);
    if (val < out.objective) {
      second = out.objective;
      out.objective = val;
      out.index = g;
    } else if (val < second) {
      second = val;
    }
  }
  out.runner_up_gap = std::isfinite(second) ? second - out.objective : 0.0;
  return out;
}

BoundReport verify_projection_bound(const FiniteDistance& L, const FiniteDistance& Lp,
                                    const FiniteDistance& Lpp,
                                    const std::vector<FiniteDist>& generators,
                                    const FiniteDist& target,
                                    const FiniteDist& target_hat,
                                    const AdmissibleCert& cert) {
  if (generators.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "no generators supplied");
  }
  const double tol = 1e-9;

  BoundReport report{};
  report.premises_ok = true;

  // Premise 1: resolution within generators.
  for (size_t i = 0; i < generators.size() && report.premises_ok; ++i) {
    for (size_t j = 0; j < generators.size(); ++j) {
      double lhs = cert.c1 * (Lp(generators[i], generators[j]) -
                              Lp(generators[j], generators[j]));
      double rhs = L(generators[i], generators[j]) - cert.c2;
      if (lhs < rhs - tol) {
        report.premises_ok = false;
        report.premise_note = "resolution premise fails on generator pair (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")";
        break;
      }
    }
  }
  // Premise 2: robustness to perturbation, checked on the supplied pair.
  if (report.premises_ok) {
    for (const auto& g : generators) {
      double shift = std::abs(Lp(g, target) - Lp(g, target_hat));
      double lpp = Lpp(target, target_hat);
      if (shift > lpp + tol || lpp > L(target, target_hat) + tol) {
        report.premises_ok = false;
        report.premise_note = "robustness premise fails";
        break;
      }
    }
  }
  if (!report.premises_ok) {
    throw Error(ErrorCode::CertificateViolated, report.premise_note);
  }

  report.opt = std::numeric_limits<double>::infinity();
  double best_surrogate = std::numeric_limits<double>::infinity();
  report.chosen = 0;
  for (int g = 0; g < static_cast<int>(generators.size()); ++g) {
    report.opt = std::min(report.opt, L(generators[g], target));
    double surrogate = Lp(generators[g], target_hat);
    if (surrogate < best_surrogate) {
      best_surrogate = surrogate;
      report.chosen = g;
    }
  }
  report.achieved = L(generators[report.chosen], target);
  report.bound = (1.0 + 2.0 * cert.c1) * report.opt +
                 2.0 * cert.c1 * Lpp(target, target_hat) + cert.c2;
  report.slack = report.bound - report.achieved;
  return report;
}

}  // namespace ganlab
