#include "wmix/cli.hpp"

#include <filesystem>
#include <stdexcept>

#include "wmix/density.hpp"
#include "wmix/ergodic.hpp"
#include "wmix/hull.hpp"
#include "wmix/index_set.hpp"
#include "wmix/mixing.hpp"
#include "wmix/reproduce.hpp"
#include "wmix/sequence.hpp"
#include "wmix/shift_bounds.hpp"
#include "wmix/symbolic.hpp"

namespace wmix::cli {

namespace {

constexpr const char* kSchemaVersion = "1";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing");
  return j.at(key);
}

std::int64_t need_int(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t opt_int(const Json& j, const std::string& key, std::int64_t fallback) {
  return j.contains(key) ? j.at(key).get<std::int64_t>() : fallback;
}

double need_num(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return v.get<double>();
}

double opt_num(const Json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::vector<std::int64_t> int_list(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(x.get<std::int64_t>());
  return out;
}

std::vector<double> num_list(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get<double>());
  return out;
}

FiniteIndexSet parse_set(const Json& spec, std::int64_t horizon, const std::string& path,
                         bool allow_zero = false) {
  IndexSetSpec s;
  s.kind = need(spec, "kind", path).get<std::string>();
  if (s.kind == "multiples") s.p = need_int(spec, "p", path);
  if (s.kind == "blocks") {
    s.starts = int_list(need(spec, "starts", path), path + ".starts");
    s.lengths = int_list(need(spec, "lengths", path), path + ".lengths");
  }
  if (s.kind == "explicit")
    s.elements = int_list(need(spec, "elements", path), path + ".elements");
  if (s.kind == "factorial_blocks") s.jmax = int(need_int(spec, "jmax", path));
  const std::int64_t h = opt_int(spec, "horizon", horizon);
  if (h < 1) throw ConfigError(path + ".horizon: missing or invalid");
  return s.build(h, allow_zero);
}

VectorSequence parse_sequence(const Json& spec, std::int64_t horizon, const std::string& path) {
  const std::string model = need(spec, "model", path).get<std::string>();
  const std::int64_t h = opt_int(spec, "horizon", horizon);
  if (model != "gram_explicit" && h < 1) throw ConfigError(path + ".horizon: missing or invalid");
  if (model == "example_3_1") return make_example_3_1(h);
  if (model == "example_3_2") return make_example_3_2(h);
  if (model == "example_3_3") return make_example_3_3(h);
  if (model == "example_6_2") return make_example_6_2(h);
  if (model == "orthonormal") return make_orthonormal(h);
  if (model == "zero") return make_zero_sequence(h);
  if (model == "constant_unit") return make_constant_unit(h);
  if (model == "operator_orbit") {
    const Json& mat = need(spec, "matrix", path);
    std::vector<std::vector<double>> u;
    for (const auto& row : mat) u.push_back(num_list(row, path + ".matrix"));
    return make_operator_orbit(u, num_list(need(spec, "vector", path), path + ".vector"), h);
  }
  if (model == "gram_explicit") {
    const Json& mat = need(spec, "gram", path);
    kernels::GramSection g;
    g.n = std::int64_t(mat.size());
    for (const auto& row : mat) {
      const auto r = num_list(row, path + ".gram");
      if (std::int64_t(r.size()) != g.n) throw ConfigError(path + ".gram: must be square");
      g.m.insert(g.m.end(), r.begin(), r.end());
    }
    return make_gram_explicit(std::move(g));
  }
  throw ConfigError(path + ".model: unknown model '" + model + "'");
}

Functional parse_functional(const Json& spec, const std::string& path) {
  const std::string kind = need(spec, "kind", path).get<std::string>();
  if (kind == "dirac")
    return Functional::dirac(need_num(spec, "t", path), opt_num(spec, "sign", 1.0));
  if (kind == "coeff")
    return Functional::combination(int_list(need(spec, "indices", path), path + ".indices"),
                                   num_list(need(spec, "coeffs", path), path + ".coeffs"));
  throw ConfigError(path + ".kind: unknown functional kind '" + kind + "'");
}

std::vector<std::int64_t> sample_grid(const Json& config, std::int64_t horizon) {
  if (config.contains("sample_ns"))
    return int_list(config.at("sample_ns"), "config.sample_ns");
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= horizon; n = std::max(n + 1, std::int64_t(double(n) * 1.5)))
    ns.push_back(n);
  if (ns.back() != horizon) ns.push_back(horizon);
  return ns;
}

Json series_json(const std::vector<std::pair<std::int64_t, double>>& s) {
  Json a = Json::array();
  for (const auto& [n, v] : s) a.push_back(Json{{"n", n}, {"value", jnum(v)}});
  return a;
}

Json verdict_json(const VerdictInfo& v) {
  return Json{{"verdict", verdict_name(v.verdict)},
              {"tolerance", jnum(v.tolerance)},
              {"head_max", jnum(v.head_max)},
              {"tail_max", jnum(v.tail_max)}};
}

CsvSeries series_csv(const std::string& name, const MixingReport& rep) {
  CsvSeries csv{name, {"n", "value_or_lower", "upper", "method"}, {}};
  for (std::size_t i = 0; i < rep.per_n.size(); ++i) {
    const std::string upper =
        i < rep.upper_per_n.size() ? format_sig17(rep.upper_per_n[i].second)
                                   : format_sig17(rep.per_n[i].second);
    csv.rows.push_back({std::to_string(rep.per_n[i].first), format_sig17(rep.per_n[i].second),
                        upper, rep.exact ? "exact" : "bounded"});
  }
  return csv;
}

Json hull_json(const HullCertificate& cert) {
  Json idx = Json::array(), w = Json::array();
  for (auto i : cert.indices) idx.push_back(i);
  for (auto x : cert.weights) w.push_back(jnum(x));
  return Json{{"indices", idx},
              {"weights", w},
              {"achieved_norm", jnum(cert.achieved_norm)},
              {"gap", jnum(cert.gap)},
              {"iterations", cert.iterations},
              {"converged", cert.converged},
              {"certified_lower", jnum(cert.certified_lower())}};
}

Json set_json(const FiniteIndexSet& s) {
  Json e = Json::array();
  for (auto v : s.elements()) e.push_back(v);
  return Json{{"elements", e}, {"horizon", s.horizon()}};
}

struct CommandResult {
  Json results;
  Json verdicts;
  Json timings;
  std::vector<CsvSeries> csv;
  bool failed = false;
};

CommandResult cmd_density(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto set = parse_set(need(config, "set", "config"), horizon, "config.set");
  const std::int64_t tail = opt_int(config, "tail_start", std::max<std::int64_t>(1, set.horizon() / 10));
  const auto prof = density_profile(set, tail);
  CommandResult out;
  out.results = {{"upper_estimate", jnum(prof.upper_estimate)},
                 {"lower_estimate", jnum(prof.lower_estimate)},
                 {"banach_estimate", jnum(prof.banach_estimate)},
                 {"window_schedule", prof.window_schedule},
                 {"tail_start", prof.tail_start},
                 {"ratios", series_json(prof.ratios)}};
  out.verdicts = Json::object();
  out.timings = {{"prefix_ratios_scanned", set.horizon() - tail + 1}};
  CsvSeries csv{"density_ratios", {"n", "ratio"}, {}};
  for (const auto& [n, v] : prof.ratios)
    csv.rows.push_back({std::to_string(n), format_sig17(v)});
  out.csv.push_back(std::move(csv));
  return out;
}

CommandResult cmd_banach(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto set = parse_set(need(config, "set", "config"), horizon, "config.set");
  const std::int64_t min_window = need_int(config, "min_window", "config");
  const auto best = banach_upper_density_window(set, min_window);
  CommandResult out;
  out.results = {{"banach_upper_density", jnum(best.density)},
                 {"window", Json{{"a", best.a}, {"b", best.b}, {"count", best.count}}},
                 {"min_window", min_window}};
  out.verdicts = Json::object();
  out.timings = {{"window_lengths_scanned", std::min(2 * min_window - 1, set.horizon()) -
                                                min_window + 1}};
  return out;
}

CommandResult cmd_mixing(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const auto f = parse_functional(need(config, "functional", "config"), "config.functional");
  const auto ns = sample_grid(config, seq.horizon());
  const double tol = opt_num(config, "tolerance", 1e-2);
  const auto rep = cesaro_abs_series(seq, f, ns, tol);
  CommandResult out;
  out.results = {{"per_n", series_json(rep.per_n)}, {"method", "exact"}};
  out.verdicts = {{"mixing", verdict_json(rep.verdict)}};
  out.timings = {{"pairings_evaluated", ns.empty() ? 0 : std::int64_t(ns.size()) * ns.back()}};
  out.csv.push_back(series_csv("mixing_series", rep));
  out.failed = rep.verdict.verdict == Verdict::failed;
  return out;
}

CommandResult cmd_uniform(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const auto ns = sample_grid(config, seq.horizon());
  DualSearchOptions opts;
  opts.exact_cutoff = opt_int(config, "exact_cutoff", opts.exact_cutoff);
  opts.restarts = int(opt_int(config, "restarts", opts.restarts));
  opts.seed = std::uint64_t(opt_int(config, "seed", 0));
  const double tol = opt_num(config, "tolerance", 1e-2);
  const auto rep = uniform_mixing_series(seq, ns, tol, opts);
  CommandResult out;
  Json lower = series_json(rep.per_n), upper = series_json(rep.upper_per_n);
  out.results = {{"lower_per_n", lower},
                 {"upper_per_n", upper},
                 {"method", rep.exact ? "exact" : "bounded"}};
  out.verdicts = {{"uniform_mixing", verdict_json(rep.verdict)}};
  out.timings = {{"windows_evaluated", std::int64_t(ns.size())}};
  out.csv.push_back(series_csv("uniform_series", rep));
  out.failed = rep.verdict.verdict == Verdict::failed;
  return out;
}

CommandResult cmd_windowed(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  DualSearchOptions opts;
  opts.exact_cutoff = opt_int(config, "exact_cutoff", opts.exact_cutoff);
  opts.restarts = int(opt_int(config, "restarts", opts.restarts));
  opts.seed = std::uint64_t(opt_int(config, "seed", 0));
  const Json& windows = need(config, "windows", "config");
  Json rows = Json::array();
  std::int64_t count = 0;
  for (const auto& wspec : windows) {
    const auto ab = int_list(wspec, "config.windows[]");
    if (ab.size() != 2) throw ConfigError("config.windows[]: expected [a, b]");
    const auto v = windowed_uniform_mixing(seq, ab[0], ab[1], opts);
    rows.push_back(Json{{"a", ab[0]},
                        {"b", ab[1]},
                        {"lower", jnum(v.lower)},
                        {"upper", jnum(v.upper)},
                        {"method", v.exact ? "exact" : "bounded"}});
    ++count;
  }
  CommandResult out;
  out.results = {{"windows", rows}};
  out.verdicts = Json::object();
  out.timings = {{"windows_evaluated", count}};
  return out;
}

CommandResult cmd_subseq(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const auto k = parse_set(need(config, "set", "config"), seq.horizon(), "config.set");
  std::vector<std::int64_t> ns;
  if (config.contains("ns")) ns = int_list(config.at("ns"), "config.ns");
  else
    for (std::int64_t n = 1; n <= k.size(); n = std::max(n + 1, std::int64_t(double(n) * 1.5)))
      ns.push_back(n);
  Json rows = Json::array();
  std::vector<std::pair<std::int64_t, double>> series;
  for (std::int64_t n : ns) {
    const double v = subsequence_mean_norm(seq, k, n);
    rows.push_back(Json{{"n", n}, {"mean_norm", jnum(v)}});
    series.emplace_back(n, v);
  }
  const double tol = opt_num(config, "tolerance", 1e-2);
  CommandResult out;
  out.results = {{"per_n", rows}, {"growth_ratio", jnum(subsequence_growth_ratio(k))}};
  out.verdicts = {{"subsequence_means", verdict_json(decay_verdict(series, tol))}};
  out.timings = {{"means_evaluated", std::int64_t(ns.size())}};
  return out;
}

CommandResult cmd_witness(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const auto ns = sample_grid(config, seq.horizon());
  const auto grid = num_list(need(config, "epsilon_grid", "config"), "config.epsilon_grid");
  DualSearchOptions opts;
  opts.exact_cutoff = opt_int(config, "exact_cutoff", opts.exact_cutoff);
  opts.restarts = int(opt_int(config, "restarts", opts.restarts));
  opts.seed = std::uint64_t(opt_int(config, "seed", 0));
  const auto rep = extract_failure_witness(seq, ns, grid, opts);
  CommandResult out;
  Json grid_json = Json::array();
  for (const auto& g : rep.grid)
    grid_json.push_back(Json{{"epsilon", jnum(g.epsilon)},
                             {"crossings", g.crossings},
                             {"anchors", g.anchors},
                             {"complete", g.complete}});
  out.results = {{"grid", grid_json}, {"found", rep.witness.has_value()}};
  if (rep.witness) {
    const auto& w = *rep.witness;
    Json anchors = Json::array();
    for (auto a : w.anchors) anchors.push_back(a);
    const auto check = verify_failure_witness(seq, w);
    out.results["witness"] = Json{{"epsilon_o", jnum(w.epsilon_o)},
                                  {"anchors", anchors},
                                  {"b", set_json(w.b)},
                                  {"verified", check.ok}};
    out.failed = !check.ok;
  }
  out.verdicts = {{"witness_found", rep.witness.has_value()}};
  out.timings = {{"windows_evaluated", std::int64_t(rep.abs_values.size())}};
  return out;
}

CommandResult cmd_shiftbound(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const std::string scheme_name = need(config, "scheme", "config").get<std::string>();
  ShiftScheme scheme;
  if (scheme_name == "convex") scheme = ShiftScheme::convex;
  else if (scheme_name == "zero_one") scheme = ShiftScheme::zero_one;
  else throw ConfigError("config.scheme: expected convex | zero_one");
  const std::int64_t p_max = need_int(config, "p_max", "config");
  const std::int64_t shift_max =
      opt_int(config, "shift_max", seq.horizon() - p_max > 0 ? seq.horizon() - p_max : 1);
  const std::int64_t samples = opt_int(config, "weight_samples", 10000);
  const std::uint64_t seed = std::uint64_t(opt_int(config, "seed", 0));
  const auto rep = shift_bound_scan(seq, scheme, p_max, shift_max, samples, seed);
  CommandResult out;
  out.results = {{"scheme", scheme_name},
                 {"constant_estimate", jnum(rep.constant_estimate)},
                 {"samples_evaluated", rep.samples_evaluated},
                 {"near_singular", rep.near_singular},
                 {"worst_case", Json{{"p", rep.worst_case.p},
                                     {"weights", jnum_vec(rep.worst_case.weights)},
                                     {"shift", rep.worst_case.shift},
                                     {"numerator", jnum(rep.worst_case.numerator)},
                                     {"denominator", jnum(rep.worst_case.denominator)},
                                     {"ratio", jnum(rep.worst_case.ratio)}}}};
  out.verdicts = Json::object();
  out.timings = {{"ratios_evaluated", samples * shift_max}};
  return out;
}

CommandResult cmd_hull(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const auto idx = parse_set(need(config, "indices", "config"), seq.horizon(), "config.indices");
  const double tol = opt_num(config, "tolerance", 1e-10);
  const std::int64_t max_iter = opt_int(config, "max_iter", 100000);
  const auto cert = min_norm_in_hull(seq, idx, tol, max_iter);
  CommandResult out;
  out.results = {{"certificate", hull_json(cert)}};
  if (config.contains("delta")) {
    const double delta = config.at("delta").get<double>();
    const auto w = separation_witness(seq, idx.elements(), delta);
    out.results["separation"] =
        w ? Json{{"found", true}, {"pairing_floor", jnum(w->pairing_floor)}}
          : Json{{"found", false}};
  }
  out.verdicts = {{"converged", cert.converged}};
  out.timings = {{"iterations", cert.iterations}};
  out.failed = !cert.converged;
  return out;
}

CommandResult cmd_structure(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto set =
      parse_set(need(config, "set", "config"), horizon, "config.set", /*allow_zero=*/true);
  const auto m_targets = int_list(need(config, "m_targets", "config"), "config.m_targets");
  const std::int64_t min_rec = opt_int(config, "min_recurrence", 3);
  const auto w = structure_search(set, m_targets, min_rec);
  CommandResult out;
  Json nj = Json::array(), mj = Json::array(), rc = Json::array();
  for (auto v : w.n_list) nj.push_back(v);
  for (auto v : w.m_list) mj.push_back(v);
  for (auto v : w.recurrence_counts) rc.push_back(v);
  out.results = {{"found", w.found},
                 {"m_list", mj},
                 {"n_list", nj},
                 {"recurrence_counts", rc},
                 {"a_density", jnum(w.a_density)},
                 {"b_banach_estimate", jnum(w.b_banach_estimate)},
                 {"periodic", w.periodic ? Json(*w.periodic) : Json(nullptr)}};
  if (w.found) {
    out.results["a"] = set_json(w.a);
    out.results["verified"] = verify_structure_witness(set, w);
    out.failed = !out.results["verified"].get<bool>();
  } else {
    out.results["failure_reason"] = w.failure_reason;
    out.failed = true;
  }
  out.verdicts = {{"witness_found", w.found}};
  out.timings = {{"levels", std::int64_t(m_targets.size())}};
  return out;
}

CommandResult cmd_translates(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto b =
      parse_set(need(config, "set", "config"), horizon, "config.set", /*allow_zero=*/true);
  CommandResult out;
  if (config.contains("f_set")) {
    const auto f = parse_set(config.at("f_set"), b.horizon(), "config.f_set",
                             /*allow_zero=*/true);
    const auto ks = translate_check(f, b);
    Json arr = Json::array();
    for (auto k : ks) arr.push_back(k);
    out.results = {{"translates", arr}, {"count", std::int64_t(ks.size())}};
    out.verdicts = Json::object();
    out.timings = {{"offsets_scanned", b.horizon() + 1}};
    return out;
  }
  const auto a_o = parse_set(need(config, "set_a_o", "config"), b.horizon(), "config.set_a_o",
                             /*allow_zero=*/true);
  const auto m_targets = int_list(need(config, "m_targets", "config"), "config.m_targets");
  const std::int64_t min_rec = opt_int(config, "min_recurrence", 3);
  const auto rep = positive_density_translates(a_o, b, m_targets, min_rec);
  Json levels = Json::array();
  bool all_ok = true;
  for (const auto& lvl : rep.levels) {
    levels.push_back(Json{{"m", lvl.m},
                          {"n", lvl.n},
                          {"translates_total", std::int64_t(lvl.translates.size())},
                          {"translates_at_least_n", lvl.translates_at_least_n},
                          {"verified", lvl.verified}});
    all_ok = all_ok && lvl.verified;
  }
  out.results = {{"i_density", jnum(rep.i_density)},
                 {"density_floor", jnum(rep.density_floor)},
                 {"levels", levels},
                 {"i_set_size", rep.i_set.size()}};
  out.verdicts = {{"translates_verified", all_ok}};
  out.failed = !all_ok;
  out.timings = {{"levels", std::int64_t(rep.levels.size())}};
  return out;
}

CommandResult cmd_ergodic(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const double tol = opt_num(config, "tolerance", 1e-2);
  const auto rep = ergodicity_test(seq, tol);
  CommandResult out;
  out.results = {{"per_n", series_json(rep.prefix_means)}};
  out.verdicts = {{"ergodicity", verdict_json(rep.verdict)}};
  out.timings = {{"means_evaluated", std::int64_t(rep.prefix_means.size())}};
  CsvSeries csv{"ergodic_series", {"n", "value_or_lower", "upper", "method"}, {}};
  for (const auto& [n, v] : rep.prefix_means)
    csv.rows.push_back({std::to_string(n), format_sig17(v), format_sig17(v), "exact"});
  out.csv.push_back(std::move(csv));
  out.failed = rep.verdict.verdict == Verdict::failed;
  return out;
}

CommandResult cmd_threshold(const Json& config) {
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const auto seq = parse_sequence(need(config, "sequence", "config"), horizon, "config.sequence");
  const auto weights = num_list(need(config, "weights", "config"), "config.weights");
  const double epsilon = need_num(config, "epsilon", "config");
  const std::uint64_t seed = std::uint64_t(opt_int(config, "seed", 0));
  const auto res = theorem71_threshold_check(seq, weights, epsilon, seed);
  CommandResult out;
  out.results = {{"refused", res.refused},
                 {"sup_value", jnum(res.sup_value)},
                 {"epsilon", jnum(res.epsilon)},
                 {"min_span", res.min_span},
                 {"windows_tested", std::int64_t(res.windows.size())},
                 {"violations", res.violations},
                 {"max_span_verified", res.max_span_verified}};
  if (res.refused) out.results["offending_k"] = res.offending_k;
  out.verdicts = {{"threshold", res.refused ? "refused" : (res.violations ? "failed" : "verified")}};
  out.timings = {{"windows_evaluated", std::int64_t(res.windows.size())}};
  out.failed = res.refused || res.violations > 0;
  return out;
}

CommandResult cmd_reproduce(const Json& config) {
  const std::string example = need(config, "example", "config").get<std::string>();
  const std::int64_t horizon = opt_int(config, "horizon", 0);
  const std::uint64_t seed = std::uint64_t(opt_int(config, "seed", 0));
  const std::int64_t cutoff = opt_int(config, "exact_cutoff", 20);
  const double tol = opt_num(config, "tolerance", 1e-2);
  const auto rep = reproduce_example(example, horizon, seed, cutoff, tol);
  CommandResult out;
  Json asserts = Json::array();
  for (const auto& a : rep.assertions)
    asserts.push_back(Json{{"name", a.name}, {"pass", a.pass}, {"details", a.details}});
  out.results = {{"example", rep.example}, {"assertions", asserts}};
  out.verdicts = {{"all_assertions_pass", rep.ok}};
  out.timings = {{"assertions", std::int64_t(rep.assertions.size())}};
  out.csv = rep.series;
  out.failed = !rep.ok;
  return out;
}

}  // namespace

RunOutput run_command(const std::string& command, const Json& config) {
  RunOutput out;
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  report["config"] = config;
  try {
    CommandResult res;
    if (command == "density") res = cmd_density(config);
    else if (command == "banach") res = cmd_banach(config);
    else if (command == "mixing") res = cmd_mixing(config);
    else if (command == "uniform") res = cmd_uniform(config);
    else if (command == "windowed") res = cmd_windowed(config);
    else if (command == "subseq") res = cmd_subseq(config);
    else if (command == "witness") res = cmd_witness(config);
    else if (command == "shiftbound") res = cmd_shiftbound(config);
    else if (command == "hull") res = cmd_hull(config);
    else if (command == "structure") res = cmd_structure(config);
    else if (command == "translates") res = cmd_translates(config);
    else if (command == "ergodic") res = cmd_ergodic(config);
    else if (command == "threshold") res = cmd_threshold(config);
    else if (command == "reproduce") res = cmd_reproduce(config);
    else throw ConfigError("unknown command '" + command + "'");
    report["results"] = res.results;
    report["verdicts"] = res.verdicts;
    report["timings"] = res.timings;
    out.csv = std::move(res.csv);
    out.exit_code = res.failed ? 2 : 0;
  } catch (const ConfigError& e) {
    report["error"] = e.what();
    out.exit_code = 1;
  } catch (const std::invalid_argument& e) {
    report["error"] = e.what();
    out.exit_code = 1;
  } catch (const std::out_of_range& e) {
    report["error"] = e.what();
    out.exit_code = 1;
  }
  out.report = report.dump(2) + "\n";
  return out;
}

void write_outputs(const RunOutput& out, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file_atomic(out_dir + "/report.json", out.report);
  for (const auto& csv : out.csv)
    write_file_atomic(out_dir + "/" + csv.name + ".csv", csv_to_string(csv));
}

}  // namespace wmix::cli
