#include "catgen/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "catgen/circuit.hpp"
#include "catgen/experiments.hpp"
#include "catgen/metrics.hpp"
#include "catgen/states.hpp"

namespace catgen {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ArgumentError("not a number: '" + text + "'");
  return v;
}

int parse_integer(const std::string& text) {
  const double v = parse_number(text);
  if (v != std::round(v)) throw ArgumentError("not an integer: '" + text + "'");
  return static_cast<int>(v);
}

// "1.5" or "1.5@45deg" as a complex amplitude.
Complex parse_amplitude(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos) return parse_number(text);
  return std::polar(parse_number(text.substr(0, at)), parse_angle(text.substr(at + 1)));
}

const std::string& arg_at(const StateSpec& s, std::size_t i) {
  if (i >= s.args.size()) throw ArgumentError("state spec '" + s.text + "' is missing an argument");
  return s.args[i];
}

SqueezeSign parse_sign(const StateSpec& s, std::size_t i) {
  if (i >= s.args.size()) return SqueezeSign::S;
  if (s.args[i] == "S") return SqueezeSign::S;
  if (s.args[i] == "S_dagger" || s.args[i] == "Sdag") return SqueezeSign::S_dagger;
  throw ArgumentError("squeeze sign must be S or S_dagger");
}

CatPhase parse_cat_phase(const StateSpec& s, std::size_t from) {
  CatPhase phase;
  for (std::size_t i = from; i < s.args.size(); ++i) {
    const auto& a = s.args[i];
    if (a == "even") phase.parity = CatParity::even;
    else if (a == "odd") phase.parity = CatParity::odd;
    else if (a == "real") phase.axis = CatAxis::real;
    else if (a == "imaginary" || a == "imag") phase.axis = CatAxis::imaginary;
    else throw ArgumentError("unknown two_cat option '" + a + "'");
  }
  return phase;
}

// Smallest dimension above 20 holding the squeezed series within tail_tol.
int squeezed_dim(double r, double tail_tol) {
  const CVector amps = squeezed_vacuum_series(r, SqueezeSign::S, 4000);
  double kept = 0.0;
  for (int d = 1; d <= 4000; ++d) {
    kept += std::norm(amps(d - 1));
    if (d >= 20 && 1.0 - kept <= tail_tol) return d + 1;
  }
  throw TruncationError("squeezed state too heavy for any supported dimension");
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file '" + path + "'");
  f << text;
}

std::string plot_script(const SweepResult& res, const std::string& data_path) {
  std::ostringstream s;
  s << "# gnuplot script\n";
  s << "set datafile separator ','\n";
  s << "set key autotitle columnhead\n";
  s << "set xlabel '" << res.schema.at(0) << "'\n";
  const std::size_t y = res.schema.size() >= 3 ? 2 : 1;
  s << "set ylabel '" << res.schema.at(y) << "'\n";
  s << "plot '" << data_path << "' using 1:" << (y + 1) << " with linespoints\n";
  return s.str();
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ArgumentError("empty grid item in '" + text + "'");
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_number(item));
    } else if (parts.size() == 3) {
      const double lo = parse_number(parts[0]);
      const double hi = parse_number(parts[1]);
      const double step = parse_number(parts[2]);
      if (!(step > 0.0)) throw ArgumentError("range step must be > 0 in '" + item + "'");
      if (hi < lo) throw ArgumentError("range upper bound below lower bound in '" + item + "'");
      const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (long i = 0; i < count; ++i) {
        const double v = lo + step * static_cast<double>(i);
        if (v <= hi + 1e-12) out.push_back(std::min(v, hi));
      }
    } else {
      throw ArgumentError("grid item must be a number or lo:hi:step, got '" + item + "'");
    }
  }
  if (out.empty()) throw ArgumentError("empty grid");
  return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    if (std::abs(v - std::round(v)) > 1e-9) throw ArgumentError("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(std::lround(v)));
  }
  return out;
}

double parse_angle(const std::string& text) {
  if (text.size() > 3 && text.ends_with("deg")) {
    return parse_number(text.substr(0, text.size() - 3)) * std::numbers::pi / 180.0;
  }
  return parse_number(text);
}

StateSpec StateSpec::parse(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.empty() || parts[0].empty()) throw ArgumentError("empty state spec");
  StateSpec s{parts[0], {parts.begin() + 1, parts.end()}, text};
  static const std::vector<std::string> kinds = {"fock",     "coherent",   "two_cat", "four_cat",
                                                 "squeezed", "subtracted", "herald",  "herald_class"};
  if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end()) {
    throw ArgumentError("unknown state kind '" + s.kind + "'");
  }
  return s;
}

bool StateSpec::is_pure() const { return kind != "herald" && kind != "herald_class"; }

TruncationConfig StateSpec::default_truncation(double tail_tol) const {
  if (kind == "fock") {
    const int n = parse_integer(arg_at(*this, 0));
    return {std::max(20, n + 2), tail_tol};
  }
  if (kind == "squeezed" || kind == "subtracted") {
    return {squeezed_dim(parse_number(arg_at(*this, 0)), tail_tol), tail_tol};
  }
  if (kind == "herald" || kind == "herald_class") return circuit_truncation(parse_number(arg_at(*this, 0)), tail_tol);
  return TruncationConfig::for_amplitude(std::abs(parse_amplitude(arg_at(*this, 0))), tail_tol);
}

FockState StateSpec::build_pure(const TruncationConfig& trunc) const {
  if (kind == "fock") return FockState::basis(parse_integer(arg_at(*this, 0)), trunc);
  if (kind == "coherent") return coherent(parse_amplitude(arg_at(*this, 0)), trunc);
  if (kind == "two_cat") return two_cat(parse_amplitude(arg_at(*this, 0)), parse_cat_phase(*this, 1), trunc);
  if (kind == "four_cat") return four_cat(parse_amplitude(arg_at(*this, 0)), parse_integer(arg_at(*this, 1)), trunc);
  if (kind == "squeezed") return squeezed_vacuum(parse_number(arg_at(*this, 0)), parse_sign(*this, 1), trunc);
  if (kind == "subtracted") {
    return photon_subtract(squeezed_vacuum(parse_number(arg_at(*this, 0)), parse_sign(*this, 1), trunc)).state;
  }
  throw ArgumentError("state kind '" + kind + "' is not a pure state");
}

DensityMatrix StateSpec::build(const TruncationConfig& trunc, int n_cutoff) const {
  if (is_pure()) return density(build_pure(trunc));
  const double alpha = parse_number(arg_at(*this, 0));
  const double eta = parse_number(arg_at(*this, 1));
  const int n = parse_integer(arg_at(*this, 2));
  if (kind == "herald_class") {
    if (n < 0 || n > 3) throw ArgumentError("herald_class residue must be 0..3");
    return heralded_class_state(alpha, eta, n, n_cutoff, trunc);
  }
  const int top = std::min(n_cutoff, trunc.dim - 1);
  if (n < 0 || n > top) throw ArgumentError("herald outcome must lie in 0..min(n_cutoff, dim - 1)");
  const auto dist = pnrd_outcome_distribution(cat_circuit(alpha, trunc), kHeraldMode, eta, top);
  return dist.records[static_cast<std::size_t>(n)].state();
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-component cat state generation: simulation and figure data"};
  app.name("catgen");
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<int> dim;
  double tail_tol = 1e-10;
  int n_cutoff = 20;
  std::string out_path;
  std::string format;
  int threads = 1;
  std::string plot_path;
  app.add_option("--dim", dim, "Fock dimension (default: per-state heuristic)")->check(CLI::Range(2, 4000));
  app.add_option("--tail-tol", tail_tol, "Largest acceptable truncated tail probability")->check(CLI::Range(0.0, 0.999));
  app.add_option("--n-cutoff", n_cutoff, "Largest PNRD outcome simulated")->check(CLI::Range(0, 1000));
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::Range(1, 256));
  app.add_option("--plot-script", plot_path, "Also write a gnuplot script for the --out data file");

  std::string beta2 = "1.0,1.5,2.0,2.5", eta2 = "0.8:1.0:0.01", panels_path;
  double panel_extent = 4.0;
  int panel_points = 81;
  auto* fig2 = app.add_subcommand("fig2", "Mean heralded fidelity vs PNRD efficiency");
  fig2->add_option("--beta", beta2, "Cat amplitudes |beta|");
  fig2->add_option("--eta", eta2, "Detector efficiencies");
  fig2->add_option("--panels", panels_path, "Write the four Wigner panels (i)-(iv) as JSON to this path");
  fig2->add_option("--panel-extent", panel_extent, "Half-width of the Wigner panel window")->check(CLI::PositiveNumber);
  fig2->add_option("--panel-points", panel_points, "Grid points per panel axis")->check(CLI::Range(2, 1001));

  std::string beta3 = "0.5:3.0:0.25", eta3 = "1.0,0.95,0.9", phi3 = "0";
  auto* fig3 = app.add_subcommand("fig3", "Displacement QFI of heralded states");
  fig3->add_option("--beta", beta3, "Cat amplitudes |beta|");
  fig3->add_option("--eta", eta3, "Detector efficiencies");
  fig3->add_option("--phi", phi3, "Displacement directions (radians)");

  std::string alpha4 = "0.05:2.0:0.05", m4 = "1,2,4,8";
  auto* fig4 = app.add_subcommand("fig4", "One-click herald with m multiplexed on-off detectors");
  fig4->add_option("--alpha", alpha4, "Input cat amplitudes");
  fig4->add_option("--m", m4, "Detector counts");

  std::string n5 = "0:9:1", beta5 = "0.25:3.0:0.25";
  auto* fig5 = app.add_subcommand("fig5", "Photon-subtracted squeezed inputs with optimized squeezing");
  fig5->add_option("--n", n5, "PNRD outcomes");
  fig5->add_option("--beta", beta5, "Target amplitudes |beta|");

  std::string state_kind, s_alpha, s_beta, s_arg = "0", s_parity = "even", s_axis = "real", s_sign = "S";
  std::optional<int> s_k, s_n;
  std::optional<double> s_r;
  auto* state = app.add_subcommand("state", "Print the Fock amplitudes of a state");
  state->add_option("kind", state_kind, "fock | coherent | two_cat | four_cat | squeezed | subtracted")->required();
  state->add_option("--alpha", s_alpha, "Amplitude (coherent, two_cat)");
  state->add_option("--beta", s_beta, "Amplitude (four_cat)");
  state->add_option("--arg", s_arg, "Amplitude phase, radians or NNdeg");
  state->add_option("--k", s_k, "Four-cat class 0..3");
  state->add_option("--n", s_n, "Fock level");
  state->add_option("--r", s_r, "Squeezing parameter");
  state->add_option("--parity", s_parity, "even | odd");
  state->add_option("--axis", s_axis, "real | imaginary");
  state->add_option("--sign", s_sign, "S | S_dagger");

  std::string w_state;
  double x_min = -4.0, x_max = 4.0, p_min = -4.0, p_max = 4.0;
  int w_points = 81;
  auto* wig = app.add_subcommand("wigner", "Wigner function of a state on a grid");
  wig->add_option("--state", w_state, "State spec, e.g. four_cat:1.5@45deg:0")->required();
  wig->add_option("--x-min", x_min);
  wig->add_option("--x-max", x_max);
  wig->add_option("--p-min", p_min);
  wig->add_option("--p-max", p_max);
  wig->add_option("--points", w_points, "Grid points per axis")->check(CLI::Range(1, 2001));

  std::string q_state, q_phi = "0";
  double q_eps = kDefaultQfiEpsilon;
  auto* qfi = app.add_subcommand("qfi", "Displacement QFI of a state");
  qfi->add_option("--state", q_state, "State spec, e.g. coherent:1.0")->required();
  qfi->add_option("--phi", q_phi, "Displacement directions (radians)");
  qfi->add_option("--epsilon", q_eps, "Finite-difference step")->check(CLI::Range(1e-4, 1e-1));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const SweepOptions opts{dim, tail_tol, n_cutoff, threads};
    auto emit = [&](const SweepResult& res) {
      write_output(format == "json" ? to_json(res) : to_csv(res), out_path, out);
      if (!plot_path.empty()) {
        if (out_path.empty()) throw ArgumentError("--plot-script needs --out");
        write_output(plot_script(res, out_path), plot_path, out);
      }
    };
    auto trunc_for = [&](const StateSpec& spec) {
      return dim ? TruncationConfig{*dim, tail_tol} : spec.default_truncation(tail_tol);
    };

    if (*fig2) {
      emit(run_fig2(parse_grid(beta2), parse_grid(eta2), opts));
      if (!panels_path.empty()) {
        const WignerGridSpec grid{-panel_extent, panel_extent, -panel_extent, panel_extent, panel_points, panel_points};
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& panel : fig2_wigner_panels(grid, opts)) {
          nlohmann::ordered_json p;
          p["label"] = panel.label;
          p["abs_beta"] = panel.abs_beta;
          p["eta"] = panel.eta;
          p["x"] = {grid.x_min, grid.x_max, grid.n_x};
          p["p"] = {grid.p_min, grid.p_max, grid.n_p};
          std::vector<std::vector<double>> rows;
          for (int r = 0; r < grid.n_p; ++r) {
            rows.emplace_back(panel.grid.values.row(r).begin(), panel.grid.values.row(r).end());
          }
          p["values"] = rows;
          p["reliable"] = panel.grid.reliable;
          j.push_back(p);
        }
        write_output(j.dump(2) + "\n", panels_path, out);
      }
    } else if (*fig3) {
      emit(run_fig3(parse_grid(beta3), parse_grid(eta3), parse_grid(phi3), opts));
    } else if (*fig4) {
      emit(run_fig4(parse_grid(alpha4), parse_int_grid(m4), opts));
    } else if (*fig5) {
      emit(run_fig5(parse_int_grid(n5), parse_grid(beta5), opts));
    } else if (*state) {
      auto need = [&](const std::string& v, const char* flag) -> const std::string& {
        if (v.empty()) throw ArgumentError(std::string("state ") + state_kind + " needs " + flag);
        return v;
      };
      std::string text;
      if (state_kind == "fock") {
        if (!s_n) throw ArgumentError("state fock needs --n");
        text = "fock:" + std::to_string(*s_n);
      } else if (state_kind == "coherent") {
        text = "coherent:" + need(s_alpha, "--alpha") + "@" + s_arg;
      } else if (state_kind == "two_cat") {
        text = "two_cat:" + need(s_alpha, "--alpha") + "@" + s_arg + ":" + s_parity + ":" + s_axis;
      } else if (state_kind == "four_cat") {
        if (!s_k) throw ArgumentError("state four_cat needs --k");
        text = "four_cat:" + need(s_beta, "--beta") + "@" + s_arg + ":" + std::to_string(*s_k);
      } else if (state_kind == "squeezed" || state_kind == "subtracted") {
        if (!s_r) throw ArgumentError("state " + state_kind + " needs --r");
        text = state_kind + ":" + format_number(*s_r) + ":" + s_sign;
      } else {
        throw ArgumentError("unknown state kind '" + state_kind + "'");
      }
      const StateSpec spec = StateSpec::parse(text);
      const TruncationConfig tc = trunc_for(spec);
      const FockState psi = spec.build_pure(tc);
      if (format == "csv") {
        SweepResult res;
        res.schema = {"n", "re", "im"};
        for (int n = 0; n < psi.dim(); ++n) res.rows.push_back({double(n), psi[n].real(), psi[n].imag()});
        write_output(to_csv(res), out_path, out);
      } else {
        write_output(state_to_json(psi, {{"spec", text},
                                         {"tail_tol", format_number(tail_tol)},
                                         {"discarded_tail", format_number(psi.discarded_tail())}}),
                     out_path, out);
      }
    } else if (*wig) {
      const StateSpec spec = StateSpec::parse(w_state);
      const TruncationConfig tc = trunc_for(spec);
      const WignerGridSpec grid{x_min, x_max, p_min, p_max, w_points, w_points};
      const WignerGrid w = wigner(spec.build(tc, n_cutoff), grid);
      SweepResult res;
      res.schema = {"x", "p", "w"};
      res.add_meta("state", w_state);
      res.add_meta("dim", std::to_string(tc.dim));
      res.add_meta("reliable", w.reliable ? "true" : "false");
      for (int j = 0; j < grid.n_p; ++j) {
        for (int i = 0; i < grid.n_x; ++i) res.rows.push_back({grid.x(i), grid.p(j), w.values(j, i)});
      }
      emit(res);
    } else if (*qfi) {
      const StateSpec spec = StateSpec::parse(q_state);
      const TruncationConfig tc = trunc_for(spec);
      const DensityMatrix rho = spec.build(tc, n_cutoff);
      SweepResult res;
      res.schema = {"phi", "epsilon", "qfi", "richardson_residual"};
      res.add_meta("state", q_state);
      res.add_meta("dim", std::to_string(tc.dim));
      for (double phi : parse_grid(q_phi)) {
        const QfiEstimate q = qfi_displacement(rho, phi, q_eps);
        res.rows.push_back({phi, q.epsilon_used, q.value, q.richardson_residual});
      }
      emit(res);
    }
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "argument error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "argument error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace catgen
