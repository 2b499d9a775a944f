#include "btr/curve.hpp"

#include <algorithm>
#include <sstream>

#include "btr/errors.hpp"
#include "json.hpp"

namespace btr {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) throw Error(ErrorKind::Validation, "empty index in key '" + s + "'");
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Validation, "malformed index in key '" + s + "'");
    }
    if (pos != item.size()) throw Error(ErrorKind::Validation, "malformed index in key '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Scalar json_scalar(const json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  if (j.is_object() && j.contains("value")) {
    Scalar s = json_scalar(j.at("value"));
    if (j.contains("eps")) s += Scalar::eps(json_scalar(j.at("eps")).value());
    return s;
  }
  throw Error(ErrorKind::Validation, "scalar must be a \"p/q\" string");
}

LocalForm parse_table(const json& j, int arity, const CurveSpec& spec, int order, const std::string& what) {
  LocalForm f(arity, order);
  if (!j.is_object()) throw Error(ErrorKind::Validation, what + ": coefficient table must be an object");
  for (const auto& [bkey, inner] : j.items()) {
    std::vector<int> ids = split_ints(bkey);
    if (static_cast<int>(ids.size()) != arity)
      throw Error(ErrorKind::ArityMismatch, what + ": branch key '" + bkey + "' has wrong arity");
    if (!inner.is_object()) throw Error(ErrorKind::Validation, what + ": degree table must be an object");
    for (const auto& [dkey, val] : inner.items()) {
      std::vector<int> degs = split_ints(dkey);
      if (static_cast<int>(degs.size()) != arity)
        throw Error(ErrorKind::ArityMismatch, what + ": degree key '" + dkey + "' has wrong arity");
      Key k(arity);
      for (int v = 0; v < arity; ++v) {
        int b = spec.branch_index(ids[v]);
        if (b < 0) throw Error(ErrorKind::Validation, what + ": unknown branch id " + std::to_string(ids[v]));
        if (degs[v] < -1000 || degs[v] > 1000) throw Error(ErrorKind::SizeLimitExceeded, what + ": degree out of range");
        if (degs[v] > order)
          throw Error(ErrorKind::Validation, what + ": degree above the declared input_order");
        k.set(v, b, degs[v]);
      }
      f.add(k, json_scalar(val));
    }
  }
  return f;
}

json table_to_json(const LocalForm& f, const CurveSpec& spec) {
  std::map<std::string, std::map<std::string, std::string>> m;
  for (const auto& [k, s] : f.sorted()) {
    std::vector<int> ids, degs;
    for (int v = 0; v < k.arity(); ++v) {
      ids.push_back(spec.branches[k.br(v)].id);
      degs.push_back(k.deg(v));
    }
    m[join_ints(ids)][join_ints(degs)] = s.str();
  }
  json j = json::object();
  for (const auto& [b, inner] : m) {
    json ji = json::object();
    for (const auto& [d, v] : inner) ji[d] = v;
    j[b] = ji;
  }
  return j;
}

}  // namespace

const LocalForm* CurveSpec::blob(int g, int n) const {
  auto it = blobs.find({g, n});
  return it == blobs.end() ? nullptr : &it->second;
}

int CurveSpec::branch_index(int id) const {
  for (int i = 0; i < num_branches(); ++i)
    if (branches[i].id == id) return i;
  return -1;
}

ValidationReport validate(const CurveSpec& spec) {
  ValidationReport r;
  if (spec.branches.empty()) r.errors.push_back("Validation: no branch points");
  for (std::size_t i = 0; i < spec.branches.size(); ++i) {
    if (spec.branches[i].alpha.value() == 0)
      r.errors.push_back("AlphaZero: alpha of branch " + std::to_string(spec.branches[i].id) + " vanishes");
    for (std::size_t j = 0; j < i; ++j)
      if (spec.branches[j].id == spec.branches[i].id)
        r.errors.push_back("Validation: duplicate branch id " + std::to_string(spec.branches[i].id));
  }
  if (spec.truncation_order < 0) r.errors.push_back("Validation: negative truncation_order");
  if (spec.omega01_tail.size() != spec.branches.size())
    r.errors.push_back("Validation: omega01_tail size does not match branches");
  for (std::size_t i = 0; i < spec.omega01_tail.size(); ++i) {
    for (const auto& [d, c] : spec.omega01_tail[i]) {
      if (d <= 0 || d == 2)
        r.errors.push_back("Validation: omega01_tail degree " + std::to_string(d) +
                           " not allowed (degree 2 is alpha; degrees <= 0 are poles of y)");
      if (d == 1 && !c.is_zero())
        r.warnings.push_back("degree-1 coefficient of omega_{0,1} on branch " + std::to_string(spec.branches[i].id) +
                             " only affects even parts");
    }
  }
  if (spec.phi02.arity() != 2) r.errors.push_back("ArityMismatch: phi02 must have arity 2");
  else {
    if (!spec.phi02.is_symmetric()) r.errors.push_back("Validation: phi02 is not symmetric");
    for (const auto& [k, s] : spec.phi02.entries())
      if (k.deg(0) < 0 || k.deg(1) < 0) {
        r.errors.push_back("NonHolomorphicBlob: phi02 has a pole");
        break;
      }
  }
  for (const auto& [gn, f] : spec.blobs) {
    auto [g, n] = gn;
    std::string tag = "blob (" + std::to_string(g) + "," + std::to_string(n) + ")";
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) {
      r.errors.push_back("UnstablePair: " + tag + " is not stable with n >= 1");
      continue;
    }
    if (f.arity() != n) r.errors.push_back("ArityMismatch: " + tag);
    for (const auto& [k, s] : f.entries()) {
      bool bad = false;
      for (int v = 0; v < k.arity(); ++v) bad = bad || k.deg(v) < 0;
      if (bad) {
        r.errors.push_back("NonHolomorphicBlob: " + tag + " has a pole");
        break;
      }
    }
    if (!f.is_symmetric()) r.errors.push_back("Validation: " + tag + " is not symmetric");
  }
  return r;
}

void validate_or_throw(const CurveSpec& spec) {
  ValidationReport r = validate(spec);
  if (r.ok()) return;
  const std::string& e = r.errors.front();
  ErrorKind kind = ErrorKind::Validation;
  if (e.rfind("AlphaZero", 0) == 0) kind = ErrorKind::AlphaZero;
  else if (e.rfind("NonHolomorphicBlob", 0) == 0) kind = ErrorKind::NonHolomorphicBlob;
  else if (e.rfind("UnstablePair", 0) == 0) kind = ErrorKind::UnstablePair;
  else if (e.rfind("ArityMismatch", 0) == 0) kind = ErrorKind::ArityMismatch;
  throw Error(kind, e.substr(e.find(':') + 2));
}

CurveSpec parse_curve_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Validation, "curve spec must be a JSON object");
  CurveSpec spec;
  try {
    if (j.contains("truncation_order")) spec.truncation_order = j.at("truncation_order").get<int>();
    if (j.contains("input_order") && !j.at("input_order").is_null()) spec.input_order = j.at("input_order").get<int>();
    if (!j.contains("branches")) throw Error(ErrorKind::Validation, "missing branches");
    for (const auto& b : j.at("branches")) {
      BranchPoint bp;
      bp.id = b.at("id").get<int>();
      bp.alpha = b.contains("alpha") ? json_scalar(b.at("alpha")) : Scalar(1);
      bp.a = b.contains("a") ? json_scalar(b.at("a")) : Scalar(0);
      spec.branches.push_back(bp);
    }
    spec.omega01_tail.assign(spec.branches.size(), {});
    if (j.contains("omega01_tail")) {
      for (const auto& [bid, inner] : j.at("omega01_tail").items()) {
        std::vector<int> ids = split_ints(bid);
        if (ids.size() != 1) throw Error(ErrorKind::Validation, "omega01_tail keys are single branch ids");
        int b = spec.branch_index(ids[0]);
        if (b < 0) throw Error(ErrorKind::Validation, "omega01_tail: unknown branch id " + bid);
        for (const auto& [dk, val] : inner.items()) {
          std::vector<int> d = split_ints(dk);
          if (d.size() != 1) throw Error(ErrorKind::Validation, "omega01_tail degree keys are single integers");
          if (d[0] > spec.input_order) throw Error(ErrorKind::Validation, "omega01_tail degree above input_order");
          Scalar s = json_scalar(val);
          if (!s.is_zero()) spec.omega01_tail[b][d[0]] += s;
        }
      }
    }
    spec.phi02 = LocalForm(2, spec.input_order);
    if (j.contains("phi02")) spec.phi02 = parse_table(j.at("phi02"), 2, spec, spec.input_order, "phi02");
    if (j.contains("blobs")) {
      for (const auto& b : j.at("blobs")) {
        int g = b.at("g").get<int>(), n = b.at("n").get<int>();
        if (n < 1 || n > 12 || g < 0 || g > 12)
          throw Error(ErrorKind::UnstablePair, "blob (" + std::to_string(g) + "," + std::to_string(n) + ") out of range");
        LocalForm f = parse_table(b.contains("coeffs") ? b.at("coeffs") : json::object(), n, spec, spec.input_order,
                                  "blob (" + std::to_string(g) + "," + std::to_string(n) + ")");
        auto it = spec.blobs.find({g, n});
        if (it == spec.blobs.end())
          spec.blobs.emplace(GN{g, n}, f);
        else
          it->second += f;
      }
    }
    std::string kind = j.value("blob_kind", std::string("kdv"));
    if (kind == "kdv" || kind == "KDV" || kind == "KDV_BLOBS")
      spec.blob_kind = BlobKind::Kdv;
    else if (kind == "standard" || kind == "STANDARD" || kind == "STANDARD_BLOBS")
      spec.blob_kind = BlobKind::Standard;
    else
      throw Error(ErrorKind::Validation, "unknown blob_kind '" + kind + "'");
    if (j.contains("F_constants"))
      for (const auto& [gk, val] : j.at("F_constants").items()) spec.F_constants[std::stoi(gk)] = json_scalar(val);
    if (j.contains("bernoulli")) {
      std::string c = j.at("bernoulli").get<std::string>();
      spec.bernoulli = c == "negated" || c == "negated-bernoulli" ? BernoulliConvention::Negated : BernoulliConvention::Standard;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("bad field: ") + e.what());
  }
  // Drop empty blob tables: absent means zero.
  for (auto it = spec.blobs.begin(); it != spec.blobs.end();) {
    if (it->second.empty())
      it = spec.blobs.erase(it);
    else
      ++it;
  }
  return spec;
}

std::string curve_spec_to_json(const CurveSpec& spec) {
  ordered_json j;
  j["truncation_order"] = spec.truncation_order;
  if (spec.input_order < kExact) j["input_order"] = spec.input_order;
  ordered_json br = ordered_json::array();
  for (const auto& b : spec.branches) br.push_back({{"id", b.id}, {"alpha", b.alpha.str()}, {"a", b.a.str()}});
  j["branches"] = br;
  ordered_json tail = ordered_json::object();
  for (int i = 0; i < spec.num_branches(); ++i) {
    if (spec.omega01_tail[i].empty()) continue;
    ordered_json t = ordered_json::object();
    for (const auto& [d, c] : spec.omega01_tail[i]) t[std::to_string(d)] = c.str();
    tail[std::to_string(spec.branches[i].id)] = t;
  }
  j["omega01_tail"] = tail;
  j["phi02"] = table_to_json(spec.phi02, spec);
  ordered_json blobs = ordered_json::array();
  for (const auto& [gn, f] : spec.blobs)
    blobs.push_back({{"g", gn.first}, {"n", gn.second}, {"coeffs", table_to_json(f, spec)}});
  j["blobs"] = blobs;
  j["blob_kind"] = spec.blob_kind == BlobKind::Kdv ? "kdv" : "standard";
  ordered_json fc = ordered_json::object();
  for (const auto& [g, v] : spec.F_constants) fc[std::to_string(g)] = v.str();
  j["F_constants"] = fc;
  if (spec.bernoulli == BernoulliConvention::Negated) j["bernoulli"] = "negated";
  return j.dump(2);
}

CurveSpec airy_spec(int truncation_order) {
  CurveSpec s;
  s.truncation_order = truncation_order;
  s.branches.push_back(BranchPoint{});
  s.omega01_tail.assign(1, {});
  return s;
}

Series1 omega01(const CurveSpec& spec, int i) {
  Series1 s(Weight::Form, spec.input_order, i);
  s.add(2, spec.branches[i].alpha);
  for (const auto& [d, c] : spec.omega01_tail[i]) s.add(d, c);
  return s;
}

Scalar omega01_coeff(const CurveSpec& spec, int i, int d) {
  if (d == 2) return spec.branches[i].alpha;
  if (d > spec.input_order) throw InsufficientTruncation(d, spec.input_order, "omega01");
  auto it = spec.omega01_tail[i].find(d);
  return it == spec.omega01_tail[i].end() ? Scalar() : it->second;
}

LocalForm omega02_expand(const CurveSpec& spec, int i, int j, int outer, int inner_order) {
  int inner = 1 - outer;
  LocalForm f(2);
  int io = order_min(inner_order, spec.input_order);
  f.set_order(inner, io);
  f.set_order(outer, spec.input_order);
  if (i == j) {
    for (int m = 0; m <= io; ++m) {
      Key k(2);
      k.set(inner, i, m);
      k.set(outer, i, -m - 2);
      f.add(k, Scalar(m + 1));
    }
  }
  for (const auto& [k, s] : spec.phi02.entries()) {
    if (k.br(0) != i || k.br(1) != j) continue;
    Key nk(2);
    nk.set(0, k.br(0), k.deg(0));
    nk.set(1, k.br(1), k.deg(1));
    f.add(nk, s);
  }
  return f;
}

std::string local_form_to_json(const LocalForm& f, const CurveSpec* spec, int max_order) {
  ordered_json j;
  j["arity"] = f.arity();
  ordered_json entries = ordered_json::array();
  for (const auto& [k, s] : f.sorted()) {
    bool keep = true;
    for (int v = 0; v < k.arity(); ++v) keep = keep && k.deg(v) <= max_order;
    if (!keep) continue;
    ordered_json e;
    std::vector<int> b, d;
    for (int v = 0; v < k.arity(); ++v) {
      b.push_back(spec ? spec->branches[k.br(v)].id : k.br(v) + 1);
      d.push_back(k.deg(v));
    }
    e["branches"] = b;
    e["degrees"] = d;
    e["value"] = s.str();
    entries.push_back(e);
  }
  j["entries"] = entries;
  std::vector<int> floors, orders;
  for (int v = 0; v < f.arity(); ++v) {
    floors.push_back(f.min_degree(v));
    orders.push_back(order_min(f.order(v), max_order));
  }
  j["floors"] = floors;
  j["orders"] = orders;
  return j.dump();
}

LocalForm local_form_from_json(const std::string& text, const CurveSpec* spec) {
  json j = json::parse(text);
  int n = j.at("arity").get<int>();
  LocalForm f(n);
  if (j.contains("orders")) {
    auto o = j.at("orders").get<std::vector<int>>();
    for (int v = 0; v < n && v < static_cast<int>(o.size()); ++v) f.set_order(v, o[v]);
  }
  for (const auto& e : j.at("entries")) {
    auto b = e.at("branches").get<std::vector<int>>();
    auto d = e.at("degrees").get<std::vector<int>>();
    Key k(n);
    for (int v = 0; v < n; ++v) k.set(v, spec ? spec->branch_index(b[v]) : b[v] - 1, d[v]);
    f.add(k, json_scalar(e.at("value")));
  }
  return f;
}

}  // namespace btr
