#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semiflux/acceptance.hpp"
#include "semiflux/semiflux.hpp"

using namespace semiflux;
using io::json;

namespace {

/// Exit codes: 1 acceptance failure, 2 invalid configuration, 3 numerical failure.
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

/// A command-line value that falls back to [section] key of the TOML config
/// when the flag was not given.
template <class T>
struct Param {
  Param(T v) : value(std::move(v)) {}
  T value;
  CLI::Option* opt = nullptr;
  std::string section, key;
};

struct Common {
  std::string config;
  std::string out;
  std::string format = "csv";
  io::TomlTable toml;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "TOML experiment config");
  cmd->add_option("--out", c.out, "output path (stdout when omitted)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

template <class T>
void resolve(Param<T>& p, const io::TomlTable& t) {
  if (p.opt && p.opt->count() > 0) return;
  if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = io::toml_string(t, p.section, p.key)) p.value = *v;
  } else if constexpr (std::is_same_v<T, bool>) {
    if (auto v = io::toml_bool(t, p.section, p.key)) p.value = *v;
  } else if constexpr (std::is_integral_v<T>) {
    if (auto v = io::toml_number(t, p.section, p.key)) {
      if (*v != std::floor(*v)) throw io::ConfigError("[" + p.section + "] " + p.key + " must be an integer");
      p.value = T(*v);
    }
  } else {
    if (auto v = io::toml_number(t, p.section, p.key)) p.value = *v;
  }
}

template <class T>
Param<T>& bind_param(CLI::App* cmd, Param<T>& p, const std::string& flags, const std::string& section, const std::string& key,
               const std::string& help) {
  p.section = section;
  p.key = key;
  p.opt = cmd->add_option(flags, p.value, help);
  return p;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw io::ConfigError("cannot write output file '" + c.out + "'");
  f << text;
}

std::string scalar_output(const Common& c, const std::string& op, const json& inputs, const std::string& text_value,
                          const json& value, double tol) {
  if (c.format == "json") return io::result_record(op, inputs, value, tol).dump(2) + "\n";
  return text_value + "\n";
}

struct HamiltonianParams {
  Param<double> a{1.0}, alpha{0.0}, circumference{2.0 * std::numbers::pi}, factor{0.25};
  Param<int> n{64};
  Param<std::string> orientation{"left"};
  Param<bool> krein{false};

  void bind_all(CLI::App* cmd) {
    bind_param(cmd, a, "--a", "hamiltonian", "a", "kinetic scale a > 0");
    bind_param(cmd, alpha, "--alpha", "hamiltonian", "alpha", "coupling constant");
    bind_param(cmd, orientation, "--orientation", "hamiltonian", "orientation", "left or right");
    bind_param(cmd, n, "--n,--grid-n", "hamiltonian", "grid_n", "grid points (even, >= 8)");
    bind_param(cmd, circumference, "--circumference", "hamiltonian", "circumference", "period of the circle");
    bind_param(cmd, factor, "--factor", "hamiltonian", "potential_factor", "coefficient of alpha sgn(x)");
    krein.opt = cmd->add_flag("--krein-override", krein.value, "allow a sign-changing coefficient");
    krein.section = "hamiltonian";
    krein.key = "krein_override";
  }
  HamiltonianConfig resolve_all(const io::TomlTable& t) {
    for (auto* p : {&a, &alpha, &circumference, &factor}) resolve(*p, t);
    resolve(n, t);
    resolve(orientation, t);
    resolve(krein, t);
    HamiltonianConfig cfg;
    cfg.a = a.value;
    cfg.alpha = alpha.value;
    cfg.grid_n = n.value;
    cfg.circumference = circumference.value;
    cfg.potential_factor = factor.value;
    cfg.orientation = parse_orientation(orientation.value);
    cfg.krein_override = krein.value;
    cfg.validate();
    return cfg;
  }
  json inputs(const HamiltonianConfig& c) const {
    return {{"a", c.a}, {"alpha", c.alpha}, {"orientation", to_string(c.orientation)}, {"grid_n", c.grid_n},
            {"circumference", c.circumference}, {"potential_factor", c.potential_factor}, {"krein_override", c.krein_override}};
  }
};

/// "zero", "const:C", "tanh[:AMP[:WIDTH]]" or "poly:c0,c1,...".
Profile parse_profile(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon), rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  std::vector<double> nums;
  std::stringstream ss(rest);
  std::string tok;
  while (std::getline(ss, tok, rest.find(',') != std::string::npos ? ',' : ':')) {
    try {
      nums.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw io::ConfigError("bad number '" + tok + "' in profile '" + spec + "'");
    }
  }
  if (kind == "zero") return Profile::constant(0.0);
  if (kind == "const") return Profile::constant(nums.empty() ? 0.0 : nums[0]);
  if (kind == "tanh") return Profile::tanh(nums.size() > 0 ? nums[0] : 0.5, nums.size() > 1 ? nums[1] : 1.0);
  if (kind == "poly") return Profile::polynomial(nums);
  throw io::ConfigError("unknown profile '" + spec + "' (zero, const:C, tanh[:AMP[:WIDTH]], poly:c0,c1,...)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semicontinuous measure calculus and delta-prime Hamiltonian experiments"};
  app.require_subcommand(1);

  // pair
  Common c_pair;
  Param<std::string> pair_f{"sgn_L"}, pair_phi{"gaussian"}, pair_o{"left"};
  auto* cmd_pair = app.add_subcommand("pair", "pair a piecewise function with the derivative of a test function");
  add_common(cmd_pair, c_pair);
  bind_param(cmd_pair, pair_f, "--f", "pair", "f", "piecewise function name");
  bind_param(cmd_pair, pair_phi, "--phi", "pair", "phi", "test function: gaussian, x-gaussian, hermite-gaussian-k");
  bind_param(cmd_pair, pair_o, "--orientation", "pair", "orientation", "left, right or standard");

  // measures
  Common c_meas;
  Param<std::string> meas_f{"H_L"}, meas_kind{"left"}, meas_set{"(0,1]"};
  auto* cmd_meas = app.add_subcommand("measures", "measure and total variation of a set");
  add_common(cmd_meas, c_meas);
  bind_param(cmd_meas, meas_f, "--f", "measures", "f", "distribution function name");
  bind_param(cmd_meas, meas_kind, "--kind", "measures", "kind", "lebesgue, left or right");
  bind_param(cmd_meas, meas_set, "--interval", "measures", "interval", "interval set, e.g. \"(0,1] u [2,3)\"");

  // euler
  Common c_euler;
  Param<std::string> euler_f{"sgn_twosided"}, euler_o{"standard"};
  auto* cmd_euler = app.add_subcommand("euler", "Euler character of a piecewise function");
  add_common(cmd_euler, c_euler);
  bind_param(cmd_euler, euler_f, "--f", "euler", "f", "piecewise function name");
  bind_param(cmd_euler, euler_o, "--orientation", "euler", "orientation", "left, right or standard");

  // spectrum
  Common c_spec;
  HamiltonianParams spec_h;
  Param<int> spec_count{0};
  auto* cmd_spec = app.add_subcommand("spectrum", "eigenvalues of the discretized Hamiltonian");
  add_common(cmd_spec, c_spec);
  spec_h.bind_all(cmd_spec);
  bind_param(cmd_spec, spec_count, "--count", "spectrum", "count", "number of eigenvalues to emit (0 = all)");

  // norms
  Common c_norms;
  Param<std::string> norms_f{"identity"}, norms_set{"[0,1]"}, norms_phi{""};
  Param<double> norms_p{4.0};
  HamiltonianParams norms_h;
  auto* cmd_norms = app.add_subcommand("norms", "sup, L^p and BV norms, or the operator norm ratio with --phi");
  add_common(cmd_norms, c_norms);
  bind_param(cmd_norms, norms_f, "--f", "norms", "f", "piecewise function name");
  bind_param(cmd_norms, norms_set, "--interval", "norms", "interval", "bounded interval set");
  bind_param(cmd_norms, norms_p, "--p", "norms", "p", "exponent of the L^p norm");
  bind_param(cmd_norms, norms_phi, "--phi", "norms", "phi", "test function for the operator norm ratio");
  norms_h.bind_all(cmd_norms);

  // propagate
  Common c_prop;
  HamiltonianParams prop_h;
  Param<double> prop_tau{0.1};
  Param<std::string> prop_method{"exponential"}, prop_init{"gaussian"};
  Param<int> prop_slices{64};
  auto* cmd_prop = app.add_subcommand("propagate", "imaginary-time propagation of a normalized state");
  add_common(cmd_prop, c_prop);
  prop_h.bind_all(cmd_prop);
  bind_param(cmd_prop, prop_tau, "--tau", "propagate", "tau", "imaginary time");
  bind_param(cmd_prop, prop_method, "--method", "propagate", "method", "exponential or trotter");
  bind_param(cmd_prop, prop_slices, "--slices", "propagate", "slices", "Trotter slices");
  bind_param(cmd_prop, prop_init, "--init", "propagate", "init", "initial state (test function name)");

  // symplectic
  Common c_symp;
  Param<std::string> symp_which{"H2"}, symp_alpha{"tanh:0.5"}, symp_theta{"zero"}, symp_check{"flow"}, symp_field{"hamiltonian"};
  Param<double> symp_q0{0.0}, symp_p0{1.0}, symp_t{1.0}, symp_dt{1e-3};
  Param<int> symp_stride{1}, symp_grid{32};
  auto* cmd_symp = app.add_subcommand("symplectic", "RK4 flows and closedness checks for H1/H2");
  add_common(cmd_symp, c_symp);
  bind_param(cmd_symp, symp_which, "--which", "symplectic", "which", "H1 or H2");
  bind_param(cmd_symp, symp_alpha, "--alpha-profile", "symplectic", "alpha", "zero, const:C, tanh[:AMP[:WIDTH]], poly:c0,c1,...");
  bind_param(cmd_symp, symp_theta, "--theta-profile", "symplectic", "theta", "same forms as --alpha-profile");
  bind_param(cmd_symp, symp_check, "--check", "symplectic", "check", "flow, closed or poincare");
  bind_param(cmd_symp, symp_field, "--field", "symplectic", "field", "hamiltonian or flipped");
  bind_param(cmd_symp, symp_q0, "--q0", "symplectic", "q0", "initial position");
  bind_param(cmd_symp, symp_p0, "--p0", "symplectic", "p0", "initial momentum");
  bind_param(cmd_symp, symp_t, "--t-end", "symplectic", "t_end", "final time");
  bind_param(cmd_symp, symp_dt, "--dt", "symplectic", "dt", "time step");
  bind_param(cmd_symp, symp_stride, "--stride", "symplectic", "stride", "record every stride-th step");
  bind_param(cmd_symp, symp_grid, "--grid", "symplectic", "grid", "grid points per side for --check closed");

  // krein
  Common c_krein;
  Param<int> krein_n{64};
  Param<double> krein_l{2.0 * std::numbers::pi};
  Param<std::string> krein_o{"left"};
  auto* cmd_krein = app.add_subcommand("krein", "J-symmetry and signature of the model sgn(x) D2");
  add_common(cmd_krein, c_krein);
  bind_param(cmd_krein, krein_n, "--n,--grid-n", "krein", "grid_n", "grid points");
  bind_param(cmd_krein, krein_l, "--circumference", "krein", "circumference", "period of the circle");
  bind_param(cmd_krein, krein_o, "--orientation", "krein", "orientation", "left or right");

  // check-all
  Common c_all;
  auto* cmd_all = app.add_subcommand("check-all", "run every acceptance criterion");
  add_common(cmd_all, c_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  auto load = [](Common& c) {
    if (!c.config.empty()) c.toml = io::load_toml(c.config);
    if (auto p = io::toml_string(c.toml, "output", "path"); p && c.out.empty()) c.out = *p;
    if (auto f = io::toml_string(c.toml, "output", "format")) {
      if (*f != "csv" && *f != "json") throw io::ConfigError("[output] format must be csv or json");
      c.format = *f;
    }
  };

  try {
    if (*cmd_pair) {
      load(c_pair);
      for (auto* p : {&pair_f, &pair_phi, &pair_o}) resolve(*p, c_pair.toml);
      Orientation o = parse_orientation(pair_o.value);
      double v = pair_against_test_derivative(io::named_function(pair_f.value), io::test_function(pair_phi.value), o);
      json in{{"f", pair_f.value}, {"phi", pair_phi.value}, {"orientation", to_string(o)}};
      emit(c_pair, scalar_output(c_pair, "pair", in, io::format_real(v), v, 1e-10));
    } else if (*cmd_meas) {
      load(c_meas);
      for (auto* p : {&meas_f, &meas_kind, &meas_set}) resolve(*p, c_meas.toml);
      MeasureKind kind = parse_measure_kind(meas_kind.value);
      IntervalSet s = io::parse_interval_set(meas_set.value);
      Measure m = Measure::from_distribution(io::named_function(meas_f.value), kind);
      double mu = measure_of(m, s), tv = total_variation(m, s);
      json in{{"f", meas_f.value}, {"kind", meas_kind.value}, {"set", io::to_json(s)}};
      if (c_meas.format == "json")
        emit(c_meas, io::result_record("measures", in, {{"measure", mu}, {"total_variation", tv}}, 1e-10).dump(2) + "\n");
      else
        emit(c_meas, io::csv({"measure", "total_variation"}, {{mu, tv}}));
    } else if (*cmd_euler) {
      load(c_euler);
      for (auto* p : {&euler_f, &euler_o}) resolve(*p, c_euler.toml);
      Orientation o = parse_orientation(euler_o.value);
      int chi = euler_character(io::named_function(euler_f.value), o);
      json in{{"f", euler_f.value}, {"orientation", to_string(o)}};
      emit(c_euler, scalar_output(c_euler, "euler", in, std::to_string(chi), chi, 0.0));
    } else if (*cmd_spec) {
      load(c_spec);
      HamiltonianConfig cfg = spec_h.resolve_all(c_spec.toml);
      resolve(spec_count, c_spec.toml);
      auto ev = spectrum(build(cfg));
      std::size_t k = spec_count.value > 0 ? std::min<std::size_t>(ev.size(), std::size_t(spec_count.value)) : ev.size();
      bool complex_values = std::any_of(ev.begin(), ev.end(), [](auto z) { return z.imag() != 0.0; });
      if (c_spec.format == "json") {
        json vals = json::array();
        for (std::size_t i = 0; i < k; ++i)
          vals.push_back(complex_values ? json{ev[i].real(), ev[i].imag()} : json(ev[i].real()));
        emit(c_spec, io::result_record("spectrum", spec_h.inputs(cfg), vals, 1e-9).dump(2) + "\n");
      } else {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < k; ++i) {
          rows.push_back({double(i), ev[i].real()});
          if (complex_values) rows.back().push_back(ev[i].imag());
        }
        std::string text = io::csv(complex_values ? std::vector<std::string>{"index", "eigenvalue", "imag"}
                                                  : std::vector<std::string>{"index", "eigenvalue"},
                                   rows);
        // Indices print as integers.
        std::string fixed;
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) {
          auto comma = line.find(',');
          std::string first = line.substr(0, comma);
          if (first.size() > 2 && first.compare(first.size() - 2, 2, ".0") == 0) first.resize(first.size() - 2);
          fixed += first + line.substr(comma) + "\n";
        }
        emit(c_spec, fixed);
      }
    } else if (*cmd_norms) {
      load(c_norms);
      for (auto* p : {&norms_f, &norms_set, &norms_phi}) resolve(*p, c_norms.toml);
      resolve(norms_p, c_norms.toml);
      if (!norms_phi.value.empty()) {
        HamiltonianConfig cfg = norms_h.resolve_all(c_norms.toml);
        NormRatioReport r = operator_norm_ratio(build(cfg), io::test_function(norms_phi.value));
        json in = norms_h.inputs(cfg);
        in["phi"] = norms_phi.value;
        json v{{"ratio", r.ratio}, {"direct_ratio", r.direct_ratio}, {"potential_factor", r.potential_factor},
               {"kinetic_l1", r.kinetic_l1}, {"potential_l1", r.potential_l1}, {"second_derivative_l1", r.second_derivative_l1}};
        emit(c_norms, io::result_record("operator_norm_ratio", in, v, 1e-6).dump(2) + "\n");
      } else {
        IntervalSet s = io::parse_interval_set(norms_set.value);
        Norms n = norms(io::named_function(norms_f.value), s, norms_p.value);
        json in{{"f", norms_f.value}, {"set", io::to_json(s)}, {"p", norms_p.value}};
        if (c_norms.format == "json")
          emit(c_norms, io::result_record("norms", in, {{"sup", n.sup}, {"l1", n.l1}, {"l2", n.l2}, {"lp", n.lp}, {"p", n.p}, {"bv", n.bv}}, 1e-10).dump(2) + "\n");
        else
          emit(c_norms, io::csv({"sup", "l1", "l2", "lp", "bv"}, {{n.sup, n.l1, n.l2, n.lp, n.bv}}));
      }
    } else if (*cmd_prop) {
      load(c_prop);
      HamiltonianConfig cfg = prop_h.resolve_all(c_prop.toml);
      resolve(prop_tau, c_prop.toml);
      resolve(prop_method, c_prop.toml);
      resolve(prop_slices, c_prop.toml);
      resolve(prop_init, c_prop.toml);
      HamiltonianOperator h = build(cfg);
      Eigen::VectorXd psi0 = normalized_state(h.grid(), io::test_function(prop_init.value));
      Propagation method;
      if (prop_method.value == "exponential") method = Propagation::exponential();
      else if (prop_method.value == "trotter") method = Propagation::trotter(prop_slices.value);
      else throw io::ConfigError("method must be exponential or trotter");
      Eigen::VectorXd psi = propagate(h, psi0, prop_tau.value, method);
      if (c_prop.format == "json") {
        json in = prop_h.inputs(cfg);
        in.update({{"tau", prop_tau.value}, {"method", prop_method.value}, {"slices", prop_slices.value}, {"init", prop_init.value}});
        emit(c_prop, io::result_record("propagate", in, {{"x", std::vector<double>(h.grid().x.data(), h.grid().x.data() + h.grid().n)},
                                                         {"re_psi", std::vector<double>(psi.data(), psi.data() + psi.size())}}, 1e-10).dump(2) + "\n");
      } else {
        std::vector<std::vector<double>> rows;
        for (int j = 0; j < h.grid().n; ++j) rows.push_back({h.grid().x[j], psi[j]});
        emit(c_prop, io::csv({"x", "re_psi"}, rows));
      }
    } else if (*cmd_symp) {
      load(c_symp);
      for (auto* p : {&symp_which, &symp_alpha, &symp_theta, &symp_check, &symp_field}) resolve(*p, c_symp.toml);
      for (auto* p : {&symp_q0, &symp_p0, &symp_t, &symp_dt}) resolve(*p, c_symp.toml);
      resolve(symp_stride, c_symp.toml);
      resolve(symp_grid, c_symp.toml);
      HamiltonianPair h;
      h.alpha = parse_profile(symp_alpha.value);
      h.theta = parse_profile(symp_theta.value);
      json in{{"which", symp_which.value}, {"alpha", symp_alpha.value}, {"theta", symp_theta.value}};
      if (symp_check.value == "closed") {
        in["grid"] = symp_grid.value;
        double r = check_closed_dH2(h, {}, symp_grid.value);
        emit(c_symp, scalar_output(c_symp, "check_closed_dH2", in, io::format_real(r), r, 0.0));
      } else if (symp_check.value == "poincare") {
        in.update({{"q", symp_q0.value}, {"p", symp_p0.value}});
        double r = poincare_residual(h, {symp_q0.value, symp_p0.value});
        emit(c_symp, scalar_output(c_symp, "poincare_residual", in, io::format_real(r), r, 0.0));
      } else if (symp_check.value == "flow") {
        FlowField field;
        if (symp_field.value == "hamiltonian") field = FlowField::Hamiltonian;
        else if (symp_field.value == "flipped") field = FlowField::FlippedCoupling;
        else throw io::ConfigError("field must be hamiltonian or flipped");
        auto traj = flow(h, parse_flow(symp_which.value), PhasePoint{symp_q0.value, symp_p0.value}, symp_t.value,
                         symp_dt.value, std::size_t(std::max(1, symp_stride.value)), field);
        std::vector<std::vector<double>> rows;
        for (const auto& s : traj) rows.push_back({s.t, s.q, s.p, s.H});
        if (c_symp.format == "json") {
          in.update({{"q0", symp_q0.value}, {"p0", symp_p0.value}, {"t_end", symp_t.value}, {"dt", symp_dt.value}, {"field", symp_field.value}});
          emit(c_symp, io::result_record("flow", in, rows, 0.0).dump(2) + "\n");
        } else {
          emit(c_symp, io::csv({"t", "q", "p", "H"}, rows));
        }
      } else {
        throw io::ConfigError("check must be flow, closed or poincare");
      }
    } else if (*cmd_krein) {
      load(c_krein);
      resolve(krein_n, c_krein.toml);
      resolve(krein_l, c_krein.toml);
      resolve(krein_o, c_krein.toml);
      Orientation o = parse_orientation(krein_o.value);
      HamiltonianOperator a = krein_model(krein_n.value, krein_l.value, o);
      KreinReport r = krein_check(a, KreinForm::from_orientation(a.grid(), o));
      json in{{"grid_n", krein_n.value}, {"circumference", krein_l.value}, {"orientation", to_string(o)}};
      if (c_krein.format == "json")
        emit(c_krein, io::result_record("krein", in, {{"j_symmetry_residual", r.j_symmetry_residual}, {"pos_subspace_dim", r.pos_subspace_dim},
                                                      {"neg_subspace_dim", r.neg_subspace_dim}}, 1e-12).dump(2) + "\n");
      else
        emit(c_krein, "j_symmetry_residual,pos_subspace_dim,neg_subspace_dim\n" + io::format_real(r.j_symmetry_residual) + "," +
                          std::to_string(r.pos_subspace_dim) + "," + std::to_string(r.neg_subspace_dim) + "\n");
    } else if (*cmd_all) {
      load(c_all);
      auto results = acceptance::run_all();
      bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
      if (c_all.format == "json") {
        json arr = json::array();
        for (const auto& r : results)
          arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"measured", r.measured}, {"expected", r.expected},
                         {"tolerance", r.tolerance}});
        emit(c_all, arr.dump(2) + "\n");
      } else {
        std::string text;
        for (const auto& r : results) text += acceptance::format_line(r) + "\n";
        text += ok ? "all criteria passed\n" : "some criteria failed\n";
        emit(c_all, text);
      }
      return ok ? 0 : 1;
    }
  } catch (const io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericError;
  }
  return 0;
}
