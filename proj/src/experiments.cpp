#include "catgen/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <thread>

#include "catgen/circuit.hpp"
#include "catgen/optics.hpp"
#include "catgen/optimize.hpp"
#include "catgen/states.hpp"

namespace catgen {

namespace {

constexpr int kSqueezeGridPoints = 64;
constexpr double kSqueezeTol = 1e-5;
constexpr double kFlatTol = 1e-12;

// Evaluates fn(0..count-1) on up to `threads` workers; results land in
// index order so the output never depends on scheduling.
std::vector<std::vector<double>> parallel_rows(std::size_t count, int threads,
                                               const std::function<std::vector<double>(std::size_t)>& fn) {
  std::vector<std::vector<double>> rows(count);
  std::vector<std::exception_ptr> errors(count);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_number(xs[i]);
  return out;
}

void common_meta(SweepResult& res, const SweepOptions& opts) {
  res.add_meta("dim", opts.dim ? std::to_string(*opts.dim) : "heuristic");
  res.add_meta("tail_tol", format_number(opts.tail_tol));
  res.add_meta("n_cutoff", std::to_string(opts.n_cutoff));
  res.add_meta("seedless", "true");
}

}  // namespace

TruncationConfig SweepOptions::truncation_for(double amplitude) const {
  if (dim) return TruncationConfig{*dim, tail_tol};
  return TruncationConfig::for_amplitude(amplitude, tail_tol);
}

TruncationConfig SweepOptions::circuit_truncation_for(double alpha) const {
  if (dim) return TruncationConfig{*dim, tail_tol};
  return circuit_truncation(alpha, tail_tol, n_cutoff);
}

// ---------------------------------------------------------------------------

int subtracted_target_class(int n) { return (n + 2) % 4; }

HeraldRecord herald_from_subtracted(double r, int n, const TruncationConfig& trunc) {
  trunc.validate();
  if (r < 0.0) throw ArgumentError("herald_from_subtracted: r must be > 0");
  if (n < 0 || n + 2 >= trunc.dim) throw ArgumentError("herald_from_subtracted: need 0 <= n < dim - 2");
  if (r == 0.0) throw ZeroNormError("herald_from_subtracted: photon subtraction annihilates the vacuum at r = 0");

  // Outcome n only draws on total-photon blocks N <= 2n + 2.
  const int work_dim = std::max(trunc.dim, 2 * n + 3);
  const TruncationConfig work{work_dim, trunc.tail_tol};
  const double norm = std::sinh(r);  // ||a S|0>|| = sinh r
  auto subtracted = [&](SqueezeSign sign) {
    const CVector sq = squeezed_vacuum_series(r, sign, work_dim + 1);
    CVector v(work_dim);
    for (int m = 0; m < work_dim; ++m) v(m) = std::sqrt(m + 1.0) * sq(m + 1) / norm;
    return FockState(std::move(v), work);
  };
  const TwoModeState out = BeamSplitter(work).apply(tensor(subtracted(SqueezeSign::S), subtracted(SqueezeSign::S_dagger)));

  // Every amplitude here is exact, so a tiny outcome probability (tanh^{2n} r
  // at small r) still fixes the conditional to full relative precision; only
  // an exactly vanishing projection counts as impossible.
  const CVector v = out.coefficients().col(n);
  HeraldRecord result{n, v.squaredNorm(), std::nullopt};
  if (result.probability > 0.0) {
    const CVector u = v.head(trunc.dim) / v.norm();
    result.conditional.emplace(u * u.adjoint(), trunc);
  }
  return result;
}

CVector subtracted_herald_analytic(double r, int n, int dim) {
  CVector v = CVector::Zero(dim);
  const double t2 = std::tanh(r) * std::tanh(r);
  if (n >= 2) v(n - 2) = std::sqrt(n * (n - 1.0));
  if (n + 2 < dim) v(n + 2) = -std::sqrt((n + 2.0) * (n + 1.0)) * t2;
  return v;
}

namespace {

TruncationConfig subtracted_truncation(double beta_target, int n) {
  TruncationConfig tc = TruncationConfig::for_amplitude(beta_target);
  tc.dim = std::max(tc.dim, n + 3);
  return tc;
}

}  // namespace

double subtracted_fidelity(double r, int n, double beta_target) {
  const TruncationConfig tc = subtracted_truncation(beta_target, n);
  const FockState target = four_cat(output_amplitude(beta_target), subtracted_target_class(n), tc);
  return fidelity_pure(herald_from_subtracted(r, n, tc).state(), target);
}

OptimizationResult optimize_squeezing(double beta_target, int n) {
  if (!(beta_target > 0.0)) throw ArgumentError("optimize_squeezing: beta_target must be > 0");
  if (n < 0) throw ArgumentError("optimize_squeezing: n must be >= 0");
  const TruncationConfig tc = subtracted_truncation(beta_target, n);
  const FockState target = four_cat(output_amplitude(beta_target), subtracted_target_class(n), tc);
  auto objective = [&](double r) { return fidelity_pure(herald_from_subtracted(r, n, tc).state(), target); };

  OptimizationResult res;
  res.k_target = subtracted_target_class(n);
  // Flat objective: the herald does not depend on r.
  const double f_lo = objective(kSqueezeMin);
  const double f_mid = objective(0.5 * (kSqueezeMin + kSqueezeMax));
  const double f_hi = objective(kSqueezeMax);
  if (n < 2 && std::abs(f_lo - f_mid) < kFlatTol && std::abs(f_hi - f_mid) < kFlatTol) {
    res.flat = true;
    res.r_star = 0.5 * (kSqueezeMin + kSqueezeMax);
    res.r_lo = kSqueezeMin;
    res.r_hi = kSqueezeMax;
    res.iterations = 3;
  } else {
    const ScalarMaximum best =
        grid_then_golden_maximize(objective, kSqueezeMin, kSqueezeMax, kSqueezeGridPoints, kSqueezeTol);
    res.r_star = best.x;
    res.r_lo = best.lo;
    res.r_hi = best.hi;
    res.iterations = best.iterations;
  }
  const HeraldRecord rec = herald_from_subtracted(res.r_star, n, tc);
  res.fidelity_at_r_star = fidelity_pure(rec.state(), target);
  res.probability_at_r_star = rec.probability;
  return res;
}

// ---------------------------------------------------------------------------

SweepResult run_fig2(const std::vector<double>& beta_list, const std::vector<double>& eta_grid,
                     const SweepOptions& opts) {
  if (beta_list.empty() || eta_grid.empty()) throw ArgumentError("run_fig2: grids must be non-empty");
  SweepResult res;
  res.schema = {"abs_beta", "eta", "mean_fidelity", "std_fidelity"};
  common_meta(res, opts);
  res.add_meta("figure", "fig2");
  res.add_meta("beta_list", join(beta_list));
  res.add_meta("eta_grid", join(eta_grid));
  res.add_meta("beta_list_reconstructed", "true");

  res.rows = parallel_rows(beta_list.size() * eta_grid.size(), opts.threads, [&](std::size_t i) {
    const double beta = beta_list[i / eta_grid.size()];
    const double eta = eta_grid[i % eta_grid.size()];
    const HeraldedFidelity hf =
        mean_heralded_fidelity(beta, eta, opts.n_cutoff, std::nullopt, opts.circuit_truncation_for(beta));
    return std::vector<double>{beta, eta, hf.mean, hf.std};
  });
  return res;
}

DensityMatrix heralded_class_state(double alpha, double eta, int residue, int n_cutoff,
                                   const TruncationConfig& trunc) {
  if (residue < 0 || residue > 3) throw ArgumentError("heralded_class_state: residue must be 0..3");
  const OutcomeDistribution dist = pnrd_outcome_distribution(cat_circuit(alpha, trunc), kHeraldMode, eta, std::min(n_cutoff, trunc.dim - 1));
  CMatrix mix = CMatrix::Zero(trunc.dim, trunc.dim);
  for (const auto& rec : dist.records) {
    if (rec.n % 4 == residue && rec.conditional) mix += rec.probability * rec.conditional->matrix();
  }
  return normalize(DensityMatrix(std::move(mix), trunc)).state;
}

std::vector<WignerPanel> fig2_wigner_panels(const WignerGridSpec& grid, const SweepOptions& opts) {
  const std::vector<std::pair<double, double>> panels = {{1.5, 0.9}, {2.5, 0.9}, {1.5, 1.0}, {2.5, 1.0}};
  const char* labels[] = {"i", "ii", "iii", "iv"};
  std::vector<WignerPanel> out;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto [beta, eta] = panels[i];
    const DensityMatrix rho = heralded_class_state(beta, eta, 0, opts.n_cutoff, opts.circuit_truncation_for(beta));
    out.push_back({labels[i], beta, eta, wigner(rho, grid)});
  }
  return out;
}

SweepResult run_fig3(const std::vector<double>& beta_grid, const std::vector<double>& eta_list,
                     const std::vector<double>& phi_samples, const SweepOptions& opts) {
  if (beta_grid.empty() || eta_list.empty() || phi_samples.empty()) {
    throw ArgumentError("run_fig3: grids must be non-empty");
  }
  SweepResult res;
  res.schema = {"abs_beta", "eta", "phi", "qfi", "richardson_residual"};
  common_meta(res, opts);
  res.add_meta("figure", "fig3");
  res.add_meta("beta_grid", join(beta_grid));
  res.add_meta("eta_list", join(eta_list));
  res.add_meta("phi_samples", join(phi_samples));
  res.add_meta("state", "class n=0 (mod 4) heralded state");
  res.add_meta("reference_rows", "eta=-1 rows are the coherent state |alpha=abs_beta>");
  res.add_meta("epsilon", format_number(kDefaultQfiEpsilon));
  res.add_meta("axes_reconstructed", "true");

  const double ref_amp = beta_grid.front();
  for (double phi : phi_samples) {
    const DensityMatrix ref = density(coherent(ref_amp, opts.truncation_for(ref_amp)));
    const QfiEstimate q = qfi_displacement(ref, phi);
    res.rows.push_back({ref_amp, -1.0, phi, q.value, q.richardson_residual});
  }

  // One state per (beta, eta); phi samples reuse it.
  const std::size_t n_states = beta_grid.size() * eta_list.size();
  const auto blocks = parallel_rows(n_states, opts.threads, [&](std::size_t i) {
    const double beta = beta_grid[i / eta_list.size()];
    const double eta = eta_list[i % eta_list.size()];
    const DensityMatrix rho = heralded_class_state(beta, eta, 0, opts.n_cutoff, opts.circuit_truncation_for(beta));
    std::vector<double> flat;
    for (double phi : phi_samples) {
      const QfiEstimate q = qfi_displacement(rho, phi);
      flat.insert(flat.end(), {beta, eta, phi, q.value, q.richardson_residual});
    }
    return flat;
  });
  for (const auto& flat : blocks) {
    for (std::size_t k = 0; k + 5 <= flat.size(); k += 5) res.rows.emplace_back(flat.begin() + k, flat.begin() + k + 5);
  }
  return res;
}

ClickHerald click_herald(double alpha, int m, const TruncationConfig& trunc) {
  const TwoModeState psi = cat_circuit(alpha, trunc);
  const Conditioned c = condition_on_povm(psi, kHeraldMode, onoff_click_povm(m, trunc));
  ClickHerald best{-1.0, c.probability, 0};
  for (int k = 0; k < 4; ++k) {
    const double f = fidelity_pure(c.conditional, four_cat(output_amplitude(alpha), k, trunc));
    if (f > best.fidelity) {
      best.fidelity = f;
      best.k_best = k;
    }
  }
  return best;
}

SweepResult run_fig4(const std::vector<double>& alpha_grid, const std::vector<int>& m_list,
                     const SweepOptions& opts) {
  if (alpha_grid.empty() || m_list.empty()) throw ArgumentError("run_fig4: grids must be non-empty");
  for (int m : m_list) {
    if (m < 1) throw ArgumentError("run_fig4: m must be >= 1");
  }
  SweepResult res;
  res.schema = {"abs_alpha", "m", "fidelity", "probability"};
  common_meta(res, opts);
  res.add_meta("figure", "fig4");
  res.add_meta("alpha_grid", join(alpha_grid));
  std::string ms;
  for (std::size_t i = 0; i < m_list.size(); ++i) ms += (i ? ";" : "") + std::to_string(m_list[i]);
  res.add_meta("m_list", ms);
  res.add_meta("target", "argmax_k <Phi_k(alpha e^{i pi/4})|rho|Phi_k>");
  res.add_meta("abs_beta_equals_abs_alpha", "true");
  res.add_meta("m_list_reconstructed", "true");

  res.rows = parallel_rows(m_list.size() * alpha_grid.size(), opts.threads, [&](std::size_t i) {
    const int m = m_list[i / alpha_grid.size()];
    const double alpha = alpha_grid[i % alpha_grid.size()];
    const ClickHerald h = click_herald(alpha, m, opts.circuit_truncation_for(alpha));
    return std::vector<double>{alpha, static_cast<double>(m), h.fidelity, h.probability};
  });
  return res;
}

SweepResult run_fig5(const std::vector<int>& n_list, const std::vector<double>& beta_grid,
                     const SweepOptions& opts) {
  if (n_list.empty() || beta_grid.empty()) throw ArgumentError("run_fig5: grids must be non-empty");
  SweepResult res;
  res.schema = {"n", "beta_target", "r_star", "fidelity", "outcome_probability"};
  common_meta(res, opts);
  res.add_meta("figure", "fig5");
  res.add_meta("beta_grid", join(beta_grid));
  res.add_meta("r_interval", format_number(kSqueezeMin) + ";" + format_number(kSqueezeMax));
  res.add_meta("target", "Phi_{(n+2) mod 4}(beta_target e^{i pi/4})");

  res.rows = parallel_rows(n_list.size() * beta_grid.size(), opts.threads, [&](std::size_t i) {
    const int n = n_list[i / beta_grid.size()];
    const double beta = beta_grid[i % beta_grid.size()];
    const OptimizationResult o = optimize_squeezing(beta, n);
    return std::vector<double>{static_cast<double>(n), beta, o.r_star, o.fidelity_at_r_star, o.probability_at_r_star};
  });
  return res;
}

}  // namespace catgen
