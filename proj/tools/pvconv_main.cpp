// pvconv: construct, evaluate and classify Bernoulli convolutions for
// Pisot-Vijayaraghavan bases.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pvconv/acceptance.hpp"
#include "pvconv/gibbs.hpp"
#include "pvconv/iset.hpp"
#include "pvconv/multifractal.hpp"

using json = nlohmann::json;
using namespace pvconv;

namespace {

// ---------------------------------------------------------------------------
// plumbing
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string subcommand;
  std::string field;
  int d = 0;
  int m = 0;
  std::string p;
  std::string probs;
  std::string word;
  std::string interval;
  std::string digits;
  int depth = 0;
  int nmin = 0, nmax = 0;
  double qmin = 0, qmax = 0, qstep = 0;
  int oracle_digits = 0;
  double alpha = 0, x = 0, y = 0;
  int kappa = 0;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string mode = "exact";

  json to_json() const {
    json j;
    j["subcommand"] = subcommand;
    if (!field.empty()) j["field"] = field;
    if (d) j["d"] = d;
    if (m) j["m"] = m;
    if (!p.empty()) j["p"] = p;
    if (!probs.empty()) j["probs"] = probs;
    if (!word.empty()) j["word"] = word;
    if (!interval.empty()) j["interval"] = interval;
    if (!digits.empty()) j["digits"] = digits;
    if (depth) j["depth"] = depth;
    if (nmax) {
      j["nmin"] = nmin;
      j["nmax"] = nmax;
    }
    if (qstep) {
      j["qmin"] = fmt_g(qmin);
      j["qmax"] = fmt_g(qmax);
      j["qstep"] = fmt_g(qstep);
    }
    if (oracle_digits) j["oracle_digits"] = oracle_digits;
    j["seed"] = seed;
    j["jobs"] = jobs;
    j["mode"] = mode;
    return j;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open output file: " + path);
  os << text;
}

void emit_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::vector<int> parse_word(const std::string& s, int alphabet) {
  std::vector<int> w;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) w.push_back(std::stoi(tok));
  } else {
    for (char c : s) {
      if (c < '0' || c > '9') throw UsageError("bad word letter: " + s);
      w.push_back(c - '0');
    }
  }
  for (int letter : w)
    if (letter < 0 || letter >= alphabet)
      throw UsageError("word letter outside the alphabet");
  return w;
}

std::vector<Rat> parse_probs(const std::string& s, bool* saw_decimal) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok.find('.') != std::string::npos && saw_decimal) *saw_decimal = true;
    out.push_back(parse_rational(tok));
  }
  if (out.empty()) throw UsageError("empty probability vector");
  return out;
}

// Endpoint grammar: sum of terms `rat`, `rat*beta^k`, `beta^k`, `alphamu`;
// `phi` and `b` alias beta.
RationalCombination parse_endpoint(const NumberField::Ptr& field, int d,
                                   std::string s) {
  for (auto& c : s)
    if (c == ' ') c = '+';  // tolerate spaces
  auto res = RationalCombination::of(field, Rat(0));
  size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sign_ = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign_ = -sign_;
      ++i;
    }
    if (i >= s.size()) break;
    std::string num;
    while (i < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' ||
            s[i] == '/'))
      num += s[i++];
    if (i < s.size() && s[i] == '*') ++i;
    Rat coef = num.empty() ? Rat(1) : parse_rational(num);
    if (sign_ < 0) coef = -coef;
    RationalCombination term = RationalCombination::of(field, coef);
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::string name;
      while (i < s.size() &&
             (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        name += s[i++];
      if (name == "beta" || name == "phi" || name == "b") {
        unsigned pow = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::string e;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            e += s[i++];
          if (e.empty()) throw UsageError("bad exponent in endpoint: " + s);
          pow = unsigned(std::stoul(e));
        }
        term = term * beta_pow(field, pow);
      } else if (name == "alphamu" || name == "alpha_mu") {
        auto am = DigitParams::make(field, d).alpha_mu;
        term = term * am;
      } else {
        throw UsageError("unknown symbol in endpoint: " + name);
      }
    } else if (num.empty()) {
      throw UsageError("cannot parse endpoint: " + s);
    }
    res = res + term;
    any = true;
  }
  if (!any) throw UsageError("empty endpoint expression");
  return res;
}

json iset_to_json(const ISet& iset, const std::vector<RelationEdge>& edges) {
  json j;
  j["elements"] = json::array();
  for (const auto& e : iset.elements) {
    json el;
    el["poly"] = e.poly_string();
    json coeffs = json::array();
    for (const auto& c : e.coeffs()) coeffs.push_back(c.get_str());
    el["coeffs"] = coeffs;
    el["approx"] = fmt_g(e.approx());
    j["elements"].push_back(el);
  }
  j["edges"] = json::array();
  for (const auto& e : edges)
    j["edges"].push_back({{"h", e.h}, {"k", e.k}, {"i", e.i}, {"j", e.j}});
  return j;
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) {
    if (!line.empty()) line += ",";
    line += c;
  }
  return line + "\n";
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int run_iset(const RunConfig& cfg, const std::string& dot_path,
             const std::string& json_path, int max_iters, int max_size) {
  auto field = NumberField::parse(cfg.field);
  auto params = DigitParams::make(field, cfg.d);
  BuildCaps caps;
  if (max_iters) caps.max_iters = max_iters;
  if (max_size) caps.max_size = max_size;
  auto [iset, edges] = build_iset(field, params, caps);
  if (!dot_path.empty()) write_text(dot_path, export_automaton(iset, edges));
  if (!json_path.empty() || dot_path.empty()) {
    json j;
    j["config"] = cfg.to_json();
    j["field"] = {{"poly", field->poly_string()},
                  {"beta", fmt_g(field->beta_approx())},
                  {"pv", field->pv()},
                  {"degree", field->degree()}};
    j["b"] = params.b;
    j["alpha_mu"] = fmt_g(params.alpha_mu.approx());
    j["iset"] = iset_to_json(iset, edges);
    emit_json(json_path.empty() ? "-" : json_path, j);
  }
  return 0;
}

int run_matrices(const RunConfig& cfg, const std::string& json_path) {
  auto field = NumberField::parse(cfg.field);
  auto params = DigitParams::make(field, cfg.d);
  auto [iset, edges] = build_iset(field, params);
  bool saw_decimal = false;
  auto probs = parse_probs(cfg.probs, &saw_decimal);
  if (int(probs.size()) != cfg.d)
    throw UsageError("need exactly d probabilities");
  Rat sum(0);
  for (auto& p : probs) sum += p;
  if (sum != 1) throw UsageError("probabilities must sum to 1");
  auto fam = build_matrices(iset, edges, probs, params.b);

  json j;
  j["config"] = cfg.to_json();
  j["r"] = iset.size();
  j["iset"] = iset_to_json(iset, edges);
  j["matrices"] = json::array();
  for (int i = 0; i < fam.size(); ++i) {
    json rows = json::array();
    for (int h = 0; h < iset.size(); ++h) {
      json row = json::array();
      for (int k = 0; k < iset.size(); ++k)
        row.push_back(to_string(fam.mats[i](h, k)));
      rows.push_back(row);
    }
    j["matrices"].push_back({{"i", i}, {"rows", rows}});
  }
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

int run_net(const RunConfig& cfg, bool erdos, const std::string& json_path) {
  AdaptedSystem sys;
  if (erdos) {
    sys = scaled_erdos_net();
  } else if (cfg.m) {
    sys = multinacci_adapted_system(cfg.m);
  } else if (!cfg.field.empty()) {
    sys = finite_type_adapted_system(NumberField::parse(cfg.field));
  } else {
    throw UsageError("net needs --multinacci, --field or --erdos");
  }
  json j;
  j["config"] = cfg.to_json();
  j["alphabet"] = sys.alphabet();
  j["words"] = json::array();
  for (const auto& w : sys.words) {
    std::string ws;
    for (int c : w) ws += char('0' + c);
    j["words"].push_back(ws);
  }
  int depth = cfg.depth ? cfg.depth : 1;
  j["intervals"] = json::array();
  std::vector<int> word(depth, 0);
  for (;;) {
    auto iv = interval_of_word(sys, word);
    json e;
    std::string ws;
    for (size_t i = 0; i < word.size(); ++i)
      ws += (i ? "," : "") + std::to_string(word[i]);
    e["word"] = ws;
    e["left_exact"] = poly_string(rational_coeffs(iv.left));
    e["length_exact"] = poly_string(rational_coeffs(iv.length));
    e["left"] = fmt_g(iv.left.approx());
    e["length"] = fmt_g(iv.length.approx());
    j["intervals"].push_back(e);
    int pos = depth - 1;
    while (pos >= 0 && word[pos] == sys.alphabet() - 1) word[pos--] = 0;
    if (pos < 0) break;
    ++word[pos];
  }
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

int run_measure(const RunConfig& cfg, const std::string& model,
                const std::string& json_path, bool exact) {
  bool saw_decimal = false;
  Rat p = parse_rational(cfg.p);
  if (cfg.p.find('.') != std::string::npos) saw_decimal = true;
  bool exact_mode = exact || !saw_decimal;

  json j;
  j["config"] = cfg.to_json();
  std::string value;
  if (model == "erdos" || model == "erdos-star") {
    auto word = parse_word(cfg.word, 3);
    if (exact_mode) {
      auto em = ErdosModel<Rat>::make(p);
      Rat v = (model == "erdos") ? em.mu(word) : em.mu_star(word);
      value = to_string(v);
    } else {
      auto em = ErdosModel<double>::make(to_double(p));
      double v = (model == "erdos") ? em.mu(word) : em.mu_star(word);
      value = fmt_g(v);
    }
  } else if (model == "multinacci-star") {
    if (cfg.m < 2) throw UsageError("multinacci-star needs --m >= 2");
    int alphabet = cfg.m * (cfg.m - 1) + 1;
    auto word = parse_word(cfg.word, alphabet);
    if (exact_mode) {
      auto mm = MultinacciModel<Rat>::make(cfg.m, p);
      value = to_string(mm.mu_star(word));
    } else {
      auto mm = MultinacciModel<double>::make(cfg.m, to_double(p));
      value = fmt_g(mm.mu_star(word));
    }
  } else {
    throw UsageError("unknown model: " + model);
  }
  if (json_path.empty()) {
    std::cout << value << "\n";
  } else {
    j["value"] = value;
    j["exact"] = exact_mode;
    emit_json(json_path, j);
  }
  return 0;
}

int run_oracle(const RunConfig& cfg, const std::string& json_path) {
  auto field = cfg.field.empty() ? golden_field() : NumberField::parse(cfg.field);
  int d = cfg.d ? cfg.d : 2;
  std::vector<Rat> probs;
  if (cfg.probs.empty()) {
    probs.assign(d, Rat(1, d));
  } else {
    probs = parse_probs(cfg.probs, nullptr);
  }
  auto comma = cfg.interval.find(',');
  if (comma == std::string::npos)
    throw UsageError("interval must be \"lo,hi\"");
  auto a = parse_endpoint(field, d, cfg.interval.substr(0, comma));
  auto b = parse_endpoint(field, d, cfg.interval.substr(comma + 1));
  auto enc = brute_force_enclosure(field, d, probs, a, b, cfg.oracle_digits);
  json j;
  j["config"] = cfg.to_json();
  j["lo"] = to_string(enc.lo);
  j["hi"] = to_string(enc.hi);
  j["lo_approx"] = fmt_g(to_double(enc.lo));
  j["hi_approx"] = fmt_g(to_double(enc.hi));
  j["digits"] = enc.digits_used;
  j["nodes"] = enc.nodes;
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

int run_cf(const RunConfig& cfg, bool have_vec, const std::string& json_path) {
  CFParams par{cfg.alpha, cfg.kappa};
  std::vector<long> digits;
  std::stringstream ss(cfg.digits);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) digits.push_back(std::stol(tok));
  if (digits.empty()) throw UsageError("cf needs --digits");
  json j;
  j["config"] = cfg.to_json();
  j["value"] = fmt_g(cf_eval(par, digits));
  if (have_vec)
    j["value_vector"] = fmt_g(cf_eval_vector(par, digits, cfg.x, cfg.y));
  if (digits.size() >= 2) j["delta_n"] = fmt_g(cf_delta(par, digits));
  j["value_inf_tail"] = fmt_g(cf_limit(par, digits, 1e-12));
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

int run_gibbs(const RunConfig& cfg, const std::string& out_path) {
  int lo = cfg.nmin ? cfg.nmin : 6;
  auto rep = convergence_report(cfg.m, to_double(parse_rational(cfg.p)), lo,
                                cfg.nmax, cfg.seed);
  json j;
  j["config"] = cfg.to_json();
  j["entries"] = json::array();
  for (const auto& e : rep.entries)
    j["entries"].push_back({{"n", e.n},
                            {"sup_gap", fmt_g(e.sup_gap)},
                            {"sandwich_slack", fmt_g(e.sandwich_slack)},
                            {"words", e.words}});
  const char* names[] = {"exponential", "harmonic", "divergent"};
  j["class"] = names[int(rep.cls)];
  j["exp_rate"] = fmt_g(rep.exp_rate);
  j["exp_r2"] = fmt_g(rep.exp_r2);
  j["harmonic_K"] = fmt_g(rep.harmonic_K);
  j["harmonic_spread"] = fmt_g(rep.harmonic_spread);
  j["tail_sensitivity"] = fmt_g(rep.tail_sensitivity);
  json kn = json::array();
  for (double v : rep.log_Kn) kn.push_back(fmt_g(v));
  j["log_Kn"] = kn;
  emit_json(out_path.empty() ? "-" : out_path, j);
  return 0;
}

int run_probe(const RunConfig& cfg, const std::string& json_path) {
  int lo = cfg.nmin ? cfg.nmin : 4;
  auto res = counterexample_probe(cfg.m, to_double(parse_rational(cfg.p)), lo,
                                  cfg.nmax);
  json j;
  j["config"] = cfg.to_json();
  j["partner_letter"] = res.partner_letter;
  j["n"] = res.n;
  json r = json::array();
  for (double v : res.r) r.push_back(fmt_g(v));
  j["r"] = r;
  j["floor_estimate"] = fmt_g(res.floor_estimate);
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

NetMeasure make_net_measure(const std::string& model, int m, double p) {
  if (model == "erdos") {
    auto em = ErdosModel<double>::make(p);
    return NetMeasure::on_net(MeasureWalk::erdos_mu(em), scaled_erdos_net());
  }
  if (model == "erdos-star") {
    auto em = ErdosModel<double>::make(p);
    return NetMeasure::on_net(MeasureWalk::erdos_mu_star(em),
                              scaled_erdos_net());
  }
  if (model == "multinacci-star") {
    if (m < 2) throw UsageError("multinacci-star needs --m >= 2");
    auto mm = MultinacciModel<double>::make(m, p);
    return NetMeasure::on_net(MeasureWalk::mu_star(mm),
                              multinacci_adapted_system(m));
  }
  if (model == "lebesgue") {
    auto net = scaled_erdos_net();
    return NetMeasure::on_net(MeasureWalk::lebesgue(net), net);
  }
  throw UsageError("unknown model: " + model);
}

int run_spectrum(const RunConfig& cfg, const std::string& model,
                 const std::string& csv_tau, const std::string& csv_f,
                 const std::string& json_path) {
  auto nm = make_net_measure(model, cfg.m, to_double(parse_rational(cfg.p)));
  auto est = spectrum(nm, cfg.depth, cfg.qmin, cfg.qmax, cfg.qstep);
  if (!csv_tau.empty()) {
    std::string text = csv_line({"q", "tau", "err"});
    for (const auto& pt : est.tau)
      text += csv_line({fmt_g(pt.q), fmt_g(pt.tau), fmt_g(pt.err)});
    write_text(csv_tau, text);
  }
  if (!csv_f.empty()) {
    std::string text = csv_line({"alpha", "f"});
    for (const auto& pt : est.falpha)
      text += csv_line({fmt_g(pt.alpha), fmt_g(pt.f)});
    write_text(csv_f, text);
  }
  json j;
  j["config"] = cfg.to_json();
  j["alpha_min"] = fmt_g(est.alpha_min);
  j["alpha_max"] = fmt_g(est.alpha_max);
  j["alpha_min_err"] = fmt_g(est.alpha_min_err);
  j["alpha_max_err"] = fmt_g(est.alpha_max_err);
  j["f_peak"] = fmt_g(est.f_peak);
  j["qc_estimate"] = fmt_g(est.qc_estimate);
  j["qc_curvature"] = fmt_g(est.qc_curvature);
  j["tau_points"] = est.tau.size();
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

int run_domain(const RunConfig& cfg, const std::string& json_path) {
  auto dc = erdos_domain_check(parse_rational(cfg.p),
                               cfg.depth ? cfg.depth : 14);
  json j;
  j["config"] = cfg.to_json();
  j["verdict"] = dc.disconnected ? "disconnected" : "connected";
  j["closed_form_gap"] = dc.closed_form_gap;
  j["alpha_star"] = fmt_g(dc.alpha_star);
  j["bound"] = fmt_g(dc.bound);
  j["alpha_bar_est"] = fmt_g(dc.alpha_bar_est);
  j["alpha_bar_err"] = fmt_g(dc.alpha_bar_err);
  j["gap_significant"] = dc.gap_significant;
  emit_json(json_path.empty() ? "-" : json_path, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernoulli convolutions for Pisot bases: translation sets, "
               "transition matrices, adapted nets, Gibbs diagnostics and "
               "multifractal spectra"};
  app.require_subcommand(1);
  RunConfig cfg;

  // iset
  auto* sub_iset = app.add_subcommand("iset", "Build I_(beta,d) and its automaton");
  std::string dot_path, json_path;
  int max_iters = 0, max_size = 0;
  sub_iset->add_option("--field", cfg.field, "field descriptor, e.g. x^2-5x-3@5.5")->required();
  sub_iset->add_option("--d", cfg.d, "convolution digit count")->required();
  sub_iset->add_option("--dot", dot_path, "DOT output path or -");
  sub_iset->add_option("--json", json_path, "JSON output path or -");
  sub_iset->add_option("--max-iters", max_iters);
  sub_iset->add_option("--max-size", max_size);

  // matrices
  auto* sub_mat = app.add_subcommand("matrices", "Digit transition matrices M_i");
  std::string mat_json;
  sub_mat->add_option("--field", cfg.field)->required();
  sub_mat->add_option("--d", cfg.d)->required();
  sub_mat->add_option("--probs", cfg.probs, "comma-separated digit probabilities")->required();
  sub_mat->add_option("--json", mat_json);

  // net
  auto* sub_net = app.add_subcommand("net", "Adapted systems and basic intervals");
  bool net_erdos = false;
  std::string net_json;
  sub_net->add_option("--multinacci", cfg.m, "multinacci degree m");
  sub_net->add_option("--field", cfg.field, "finite-type construction for this field");
  sub_net->add_flag("--erdos", net_erdos, "scaled 3-map net on [0, beta)");
  sub_net->add_option("--depth", cfg.depth, "interval enumeration depth");
  sub_net->add_option("--json", net_json);

  // measure
  auto* sub_measure = app.add_subcommand("measure", "Evaluate a measure on a word");
  std::string measure_model = "erdos", measure_json;
  bool measure_exact = false;
  sub_measure->add_option("--model", measure_model, "erdos | erdos-star | multinacci-star");
  sub_measure->add_option("--m", cfg.m);
  sub_measure->add_option("--p", cfg.p, "probability of digit 0")->required();
  sub_measure->add_option("--word", cfg.word)->required();
  sub_measure->add_flag("--exact", measure_exact, "force exact rational evaluation");
  sub_measure->add_option("--json", measure_json);

  // oracle
  auto* sub_oracle = app.add_subcommand("oracle", "Brute-force measure enclosure");
  std::string oracle_json;
  sub_oracle->add_option("--field", cfg.field, "defaults to the golden field");
  sub_oracle->add_option("--d", cfg.d, "digit count (default 2)");
  sub_oracle->add_option("--probs", cfg.probs, "defaults to uniform");
  sub_oracle->add_option("--interval", cfg.interval, "\"lo,hi\" with beta/phi/alphamu symbols")->required();
  sub_oracle->add_option("--digits", cfg.oracle_digits, "expansion depth N")->required();
  sub_oracle->add_option("--json", oracle_json);

  // cf
  auto* sub_cf = app.add_subcommand("cf", "Generalized continued fractions");
  std::string cf_vec, cf_json;
  sub_cf->add_option("--alpha", cfg.alpha)->required();
  sub_cf->add_option("--kappa", cfg.kappa)->required();
  sub_cf->add_option("--digits", cfg.digits, "a_0,a_1,...")->required();
  sub_cf->add_option("--vector", cf_vec, "terminal vector x,y");
  sub_cf->add_option("--json", cf_json);

  // gibbs
  auto* sub_gibbs = app.add_subcommand("gibbs", "n-step potential convergence report");
  std::string gibbs_model = "multinacci", gibbs_out, gibbs_report = "json";
  sub_gibbs->add_option("--model", gibbs_model)->check(CLI::IsMember({"multinacci"}));
  sub_gibbs->add_option("--m", cfg.m)->required();
  sub_gibbs->add_option("--p", cfg.p)->required();
  sub_gibbs->add_option("--nmin", cfg.nmin);
  sub_gibbs->add_option("--nmax", cfg.nmax)->required();
  sub_gibbs->add_option("--report", gibbs_report);
  sub_gibbs->add_option("--out", gibbs_out);
  sub_gibbs->add_option("--seed", cfg.seed);

  // probe
  auto* sub_probe = app.add_subcommand("probe", "Weak-Gibbs failure probe");
  std::string probe_json;
  sub_probe->add_option("--m", cfg.m)->required();
  sub_probe->add_option("--p", cfg.p)->required();
  sub_probe->add_option("--nmin", cfg.nmin);
  sub_probe->add_option("--nmax", cfg.nmax)->required();
  sub_probe->add_option("--json", probe_json);

  // spectrum
  auto* sub_spec = app.add_subcommand("spectrum", "L^q spectrum and f(alpha)");
  std::string spec_model = "erdos", spec_csv, spec_csv_f, spec_json;
  sub_spec->add_option("--model", spec_model, "erdos | erdos-star | multinacci-star | lebesgue");
  sub_spec->add_option("--m", cfg.m);
  sub_spec->add_option("--p", cfg.p)->required();
  sub_spec->add_option("--depth", cfg.depth)->required();
  sub_spec->add_option("--qmin", cfg.qmin)->required();
  sub_spec->add_option("--qmax", cfg.qmax)->required();
  sub_spec->add_option("--qstep", cfg.qstep);
  sub_spec->add_option("--csv", spec_csv, "tau CSV path");
  sub_spec->add_option("--csv-f", spec_csv_f, "f(alpha) CSV path");
  sub_spec->add_option("--json", spec_json);
  sub_spec->add_option("--jobs", cfg.jobs, "reserved; evaluation is single-threaded");

  // domain
  auto* sub_domain = app.add_subcommand("domain", "Multifractal domain disconnection check");
  std::string domain_json;
  sub_domain->add_option("--p", cfg.p)->required();
  sub_domain->add_option("--depth", cfg.depth);
  sub_domain->add_option("--json", domain_json);

  // accept
  auto* sub_accept = app.add_subcommand("accept", "Run the acceptance suite");
  std::string suite = "primary";
  sub_accept->add_option("--suite", suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sub_iset) {
      cfg.subcommand = "iset";
      return run_iset(cfg, dot_path, json_path, max_iters, max_size);
    }
    if (*sub_mat) {
      cfg.subcommand = "matrices";
      return run_matrices(cfg, mat_json);
    }
    if (*sub_net) {
      cfg.subcommand = "net";
      return run_net(cfg, net_erdos, net_json);
    }
    if (*sub_measure) {
      cfg.subcommand = "measure";
      cfg.mode = measure_exact || cfg.p.find('.') == std::string::npos
                     ? "exact"
                     : "double";
      return run_measure(cfg, measure_model, measure_json, measure_exact);
    }
    if (*sub_oracle) {
      cfg.subcommand = "oracle";
      return run_oracle(cfg, oracle_json);
    }
    if (*sub_cf) {
      cfg.subcommand = "cf";
      cfg.mode = "double";
      if (!cf_vec.empty()) {
        auto comma = cf_vec.find(',');
        if (comma == std::string::npos) throw UsageError("--vector needs x,y");
        cfg.x = std::stod(cf_vec.substr(0, comma));
        cfg.y = std::stod(cf_vec.substr(comma + 1));
      }
      return run_cf(cfg, !cf_vec.empty(), cf_json);
    }
    if (*sub_gibbs) {
      cfg.subcommand = "gibbs";
      cfg.mode = "double";
      if (gibbs_report != "json")
        throw UsageError("only --report json is available");
      return run_gibbs(cfg, gibbs_out);
    }
    if (*sub_probe) {
      cfg.subcommand = "probe";
      cfg.mode = "double";
      return run_probe(cfg, probe_json);
    }
    if (*sub_spec) {
      cfg.subcommand = "spectrum";
      cfg.mode = "double";
      if (!cfg.qstep) cfg.qstep = 0.25;
      return run_spectrum(cfg, spec_model, spec_csv, spec_csv_f, spec_json);
    }
    if (*sub_domain) {
      cfg.subcommand = "domain";
      return run_domain(cfg, domain_json);
    }
    if (*sub_accept) {
      if (suite != "primary") throw UsageError("unknown suite: " + suite);
      auto results = run_acceptance_suite(std::cout);
      return all_passed(results) ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
