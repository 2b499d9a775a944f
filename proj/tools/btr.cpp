#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "btr/engine.hpp"
#include "btr/errors.hpp"
#include "btr/global.hpp"
#include "btr/graphs.hpp"
#include "btr/kdv.hpp"
#include "btr/matrix_model.hpp"
#include "btr/psi.hpp"
#include "btr/residue.hpp"

#ifdef BTR_HAVE_SELF_TEST
#include "acceptance/suite.hpp"
#endif

using json = nlohmann::ordered_json;
using namespace btr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitTruncation = 3;
constexpr int kExitCheckFailed = 4;

struct Common {
  std::string curve;
  std::string out;
  int truncation = -1;
  bool negated_bernoulli = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CurveSpec load_curve(const Common& c) {
  if (c.curve.empty()) throw Error(ErrorKind::Validation, "--curve is required");
  CurveSpec s = parse_curve_spec(read_file(c.curve));
  if (c.truncation >= 0) s.truncation_order = c.truncation;
  if (c.negated_bernoulli) s.bernoulli = BernoulliConvention::Negated;
  validate_or_throw(s);
  return s;
}

void emit(const Common& c, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::Validation, "cannot write " + c.out);
  f << text;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::string convention_name(BernoulliConvention b) {
  return b == BernoulliConvention::Standard ? "standard-bernoulli" : "negated-bernoulli";
}

std::vector<GN> stable_pairs(int chi_max) {
  std::vector<GN> r;
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int g = 0; 2 * g - 2 < chi; ++g) r.push_back({g, chi - 2 * g + 2});
  return r;
}

json check_row(const std::string& what, int g, int n, bool ok, const std::string& detail) {
  json r = {{"check", what}, {"g", g}, {"n", n}, {"ok", ok}};
  if (!detail.empty()) r["detail"] = detail;
  return r;
}

// Suites over one spec; returns rows and sets ok.
json run_suite(const std::string& suite, CurveSpec spec, int max_chi, bool& ok) {
  json rows = json::array();
  auto add = [&](json row) {
    ok = ok && row["ok"].get<bool>();
    rows.push_back(std::move(row));
  };
  bool all = suite == "all";
  Engine e(spec);
  if (all || suite == "loop-equations")
    for (const auto& r : e.check_loop_equations(max_chi, e.full_family()))
      add(check_row("loop-equations", r.g, r.n, r.linear_ok && r.quadratic_ok, r.detail));
  if (all || suite == "dual-path") {
    KdvBackend kb(e);
    for (auto [g, n] : stable_pairs(std::min(max_chi, 3))) {
      std::string why;
      add(check_row("reduced-graphs", g, n, agree(kb.omega_via_calG(g, n), e.omega(g, n), &why), why));
      add(check_row("recursion", g, n, e.omega_recursive(g, n) == e.omega(g, n), ""));
    }
  }
  if (all || suite == "round-trip")
    for (auto [g, n] : stable_pairs(max_chi)) {
      LocalForm h = e.omega(g, n);
      for (int v = 0; v < n; ++v) h = project_H(spec, h, v);
      std::string why;
      add(check_row("holomorphic-projection", g, n, agree(h, e.standard_blob(g, n), &why), why));
    }
  if (all || suite == "parity") {
    CurveSpec odd = spec;
    for (auto& tail : odd.omega01_tail) std::erase_if(tail, [](const auto& t) { return t.first % 2 != 0; });
    odd.phi02 = odd_part_all(spec.phi02);
    for (auto& [k, b] : odd.blobs) b = odd_part_all(b);
    Engine eo(odd);
    for (auto [g, n] : stable_pairs(max_chi)) {
      add(check_row("odd-decoupling", g, n, odd_part_all(e.omega(g, n)) == odd_part_all(eo.omega(g, n)), ""));
      add(check_row("odd-blobs-odd", g, n, odd_part_all(eo.omega(g, n)) == eo.omega(g, n), ""));
    }
  }
  if (all || suite == "dilaton")
    for (auto [g, n] : stable_pairs(max_chi)) {
      if (3 * g - 3 + n > 4) continue;
      DilatonCheck r = dilaton_lemma_check(spec, g, n);
      add(check_row("dilaton-lemma", g, n, r.ok, r.detail));
    }
  if (rows.empty()) throw Error(ErrorKind::Validation, "unknown suite " + suite);
  return rows;
}

mm::Potential load_potential(const std::string& path, Scalar& u) {
  json j = json::parse(read_file(path));
  u = Scalar::parse(j.value("u", std::string("1")));
  mm::Potential pot;
  for (const auto& c : j.value("couplings", json::array())) {
    std::vector<int> lengths = c.at("lengths").get<std::vector<int>>();
    for (int l : lengths)
      if (l < 1) throw Error(ErrorKind::Validation, "trace lengths must be positive");
    if (lengths.empty()) throw Error(ErrorKind::Validation, "coupling without traces");
    pot.add(c.at("h").get<int>(), lengths, Scalar::parse(c.at("value").get<std::string>()));
  }
  return pot;
}

json maps_table(const std::string& path, int lmax, int max_half_edges) {
  Scalar u;
  mm::Potential pot = load_potential(path, u);
  mm::GaussianModel model(u, 2 * lmax + 8);
  json rows = json::array();
  auto row = [&](const std::string& q, int genus, int order, int l, const Scalar& v, const char* source) {
    rows.push_back({{"quantity", q}, {"genus", genus}, {"order", order}, {"length", l}, {"value", v.str()}, {"source", source}});
  };
  auto oracle = [&](std::vector<mm::WickBlock> blocks, int exponent, int l, auto&& put) {
    int half = l;
    for (const auto& b : blocks)
      for (int x : b.traces) half += x;
    if (half > max_half_edges || half % 2) return;
    blocks.push_back({{l}, Scalar(1), -1});
    auto r = mm::wick_connected(blocks, u, max_half_edges);
    put(r.count(exponent) ? r[exponent] : Scalar(0));
  };
  auto disk = mm::omega01_moments(model.curve(), lmax);
  for (int l = 1; l <= lmax; ++l) {
    row("W", 0, 0, l, disk[l], "engine");
    oracle({}, 0, l, [&](const Scalar& v) { row("W", 0, 0, l, v, "oracle"); });
  }
  for (int l = 1; l <= lmax; ++l) {
    row("W", 1, 0, l, model.moment(1, {l}), "engine");
    oracle({}, -2, l, [&](const Scalar& v) { row("W", 1, 0, l, v, "oracle"); });
  }
  if (!pot.t.empty()) {
    auto var = mm::omega01_moment_variation(pot, model, lmax);
    std::vector<mm::WickBlock> cells;
    for (const auto& [hl, t] : pot.t) {
      const auto& [h, L] = hl;
      Scalar w = t * Scalar(Rational(1) / factorial(static_cast<int>(L.size())));
      for (int x : L) w *= Scalar(Rational(1, x));
      cells.push_back({L, w, 2 - 2 * h - static_cast<int>(L.size())});
    }
    for (int l = 1; l <= lmax; ++l) {
      row("W", 0, 1, l, var[l], "engine");
      Scalar sum(0);
      bool complete = true;
      for (const auto& c : cells) {
        bool done = false;
        oracle({c}, 0, l, [&](const Scalar& v) {
          sum += v;
          done = true;
        });
        int half = l;
        for (int x : c.traces) half += x;
        if (!done && half % 2 == 0) complete = false;
      }
      if (complete) row("W", 0, 1, l, sum, "oracle");
    }
  }
  return {{"u", u.str()}, {"rows", rows}};
}

json convert_blobs(CurveSpec spec, const std::string& to, int max_chi) {
  BlobKind target = to == "standard" ? BlobKind::Standard : BlobKind::Kdv;
  if (to != "standard" && to != "kdv") throw Error(ErrorKind::Validation, "--to must be standard or kdv");
  Engine e(spec);
  CurveSpec out = spec;
  out.blob_kind = target;
  out.blobs.clear();
  for (auto [g, n] : stable_pairs(max_chi)) {
    const LocalForm& b = target == BlobKind::Standard ? e.standard_blob(g, n) : e.kdv_blob(g, n);
    if (!b.empty()) out.blobs[{g, n}] = b;
  }
  return json::parse(curve_spec_to_json(out));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact blobbed topological recursion"};
  app.require_subcommand(1);
  Common c;
  int g = 0, n = 1, max_chi = 3, lmax = 8, max_half = 14;
  std::string degrees, kappas, method = "graphs", suite = "all", to = "standard", family = "bip0", leaves, potential;
  bool normalized = false;
  auto curve_opts = [&](CLI::App* s) {
    s->add_option("--curve", c.curve, "Curve spec JSON")->check(CLI::ExistingFile);
    s->add_option("--truncation", c.truncation, "Override the truncation order");
  };
  app.fallthrough();
  app.add_option("-o,--out", c.out, "Write JSON here instead of stdout");
  app.add_flag("--negated-bernoulli", c.negated_bernoulli, "Bernoulli numbers with the opposite sign");

  auto* compute = app.add_subcommand("compute", "Correlator omega_{g,n} as a local form");
  curve_opts(compute);
  compute->add_option("--g", g)->required();
  compute->add_option("--n", n)->required();
  compute->add_flag("--normalized", normalized, "Normalized recursion without blobs");

  auto* psi = app.add_subcommand("psi", "Intersection numbers of psi and kappa classes");
  psi->add_option("--g", g)->required();
  psi->add_option("--degrees", degrees, "Comma-separated psi degrees")->required();
  psi->add_option("--kappas", kappas, "Comma-separated kappa indices");

  auto* fe = app.add_subcommand("free-energy", "Free energy F_g");
  curve_opts(fe);
  fe->add_option("--g", g)->required();
  fe->add_option("--method", method, "graphs, residue or both")->check(CLI::IsMember({"graphs", "residue", "both"}));

  auto* check = app.add_subcommand("check", "Run a check suite on a curve");
  curve_opts(check);
  check->add_option("--suite", suite)->check(
      CLI::IsMember({"all", "loop-equations", "dual-path", "round-trip", "parity", "dilaton"}));
  check->add_option("--max-chi", max_chi)->check(CLI::Range(1, 4));

  auto* maps = app.add_subcommand("maps", "Map counts of the Gaussian model and first-order couplings");
  maps->add_option("--potential", potential, "Potential JSON")->required()->check(CLI::ExistingFile);
  maps->add_option("--lmax", lmax)->check(CLI::Range(1, 12));
  maps->add_option("--max-half-edges", max_half)->check(CLI::Range(2, 16));

  auto* convert = app.add_subcommand("convert-blobs", "Rewrite the blobs of a curve in the other convention");
  curve_opts(convert);
  convert->add_option("--to", to)->check(CLI::IsMember({"standard", "kdv"}));
  convert->add_option("--max-chi", max_chi)->check(CLI::Range(1, 4));

  auto* graphs = app.add_subcommand("report-graphs", "List graph enumerations");
  curve_opts(graphs);
  graphs->add_option("--family", family)->check(CLI::IsMember({"bip0", "calG"}));
  graphs->add_option("--g", g)->required();
  graphs->add_option("--n", n)->required();
  graphs->add_option("--holomorphic-leaves", leaves, "Bip0: comma-separated 1-based leaves of H type");

  auto* self = app.add_subcommand("self-test", "Run the acceptance criteria");
  int fault = 0;
  self->add_option("--inject-fault", fault, "Corrupt the oracle of one criterion")->check(CLI::Range(0, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*compute) {
      CurveSpec s = load_curve(c);
      Engine e(s);
      const LocalForm& w = normalized ? e.omega0(g, n) : e.omega(g, n);
      int known = w.arity() ? w.min_order() : kExact;
      if (known < s.truncation_order)
        throw InsufficientTruncation(s.input_order + s.truncation_order - known, s.input_order,
                                     "compute with truncation_order " + std::to_string(s.truncation_order) +
                                         " needs a higher input_order");
      json j = {{"g", g}, {"n", n}};
      json f = json::parse(local_form_to_json(w, &s, s.truncation_order));
      for (auto& [k, v] : f.items()) j[k] = v;
      emit(c, j);
    } else if (*psi) {
      std::vector<int> d = parse_list(degrees), k = parse_list(kappas);
      Rational v = k.empty() ? psi_intersection(g, d) : kappa_psi_intersection(g, d, k);
      json j = {{"g", g}, {"degrees", d}};
      if (!k.empty()) j["kappas"] = k;
      j["value"] = rational_str(v);
      emit(c, j);
    } else if (*fe) {
      CurveSpec s = load_curve(c);
      Engine e(s);
      json j = {{"g", g}};
      if (method == "graphs" || method == "both") j["value"] = KdvBackend(e).free_energy(g).str();
      if (method == "residue" || method == "both") j[method == "both" ? "residue_value" : "value"] = free_energy_popore(e, g).str();
      j["convention"] = convention_name(s.bernoulli);
      emit(c, j);
      if (method == "both" && j["value"] != j["residue_value"]) return kExitCheckFailed;
    } else if (*check) {
      bool ok = true;
      json rows = run_suite(suite, load_curve(c), max_chi, ok);
      emit(c, {{"suite", suite}, {"max_chi", max_chi}, {"ok", ok}, {"results", rows}});
      return ok ? kExitOk : kExitCheckFailed;
    } else if (*maps) {
      json t = maps_table(potential, lmax, max_half);
      bool ok = true;
      std::map<std::string, std::string> engine;
      for (const auto& r : t["rows"]) {
        std::string key = r["quantity"].get<std::string>() + "/" + std::to_string(r["genus"].get<int>()) + "/" +
                          std::to_string(r["order"].get<int>()) + "/" + std::to_string(r["length"].get<int>());
        if (r["source"] == "engine") engine[key] = r["value"];
        else ok = ok && engine[key] == r["value"];
      }
      t["engine_matches_oracle"] = ok;
      emit(c, t);
      return ok ? kExitOk : kExitCheckFailed;
    } else if (*convert) {
      emit(c, convert_blobs(load_curve(c), to, max_chi));
    } else if (*graphs) {
      CurveSpec s = load_curve(c);
      Engine e(s);
      std::vector<BipGraph> list;
      std::ostringstream text;
      if (family == "bip0") {
        std::vector<int> A = parse_list(leaves);
        for (int& a : A) {
          if (a < 1 || a > n) throw Error(ErrorKind::Validation, "leaf out of range");
          --a;
        }
        list = e.bip0_graph_list(g, n, A);
      } else {
        list = KdvBackend(e).calG_box(g, n);
      }
      std::cout << "# " << family << " g=" << g << " n=" << n << " count " << list.size() << "\n";
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::cout << "# graph " << i << "\n";
        std::cout << graph_to_text(list[i], family == "bip0" ? "OMEGA0" : "KDV", family == "bip0" ? "PHI" : "PHI");
      }
    } else if (*self) {
#ifdef BTR_HAVE_SELF_TEST
      acceptance::Options o;
      o.inject_fault = fault;
      if (c.negated_bernoulli) o.bernoulli = BernoulliConvention::Negated;
      auto results = acceptance::run(o);
      bool ok = true;
      for (const auto& r : results) ok = ok && r.pass;
      json j = {{"ok", ok}, {"criteria", json::parse(acceptance::to_json(results))}};
      emit(c, j);
      return ok ? kExitOk : kExitCheckFailed;
#else
      throw Error(ErrorKind::Validation, "built without the acceptance suite");
#endif
    }
  } catch (const InsufficientTruncation& e) {
    std::cerr << e.what() << "\nrequired order: " << e.required() << "\n";
    return kExitTruncation;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    std::cerr << "Validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "Validation: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
