#include "instance_io.hpp"

#include "builders.hpp"
#include "errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace feq {

namespace {

using SetMap = std::map<std::string, SetPtr>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw invalid_input(path + ": " + what);
}

const ojson& field(const ojson& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "required field is missing");
  return *it;
}

std::string get_string(const ojson& j, const std::string& key, const std::string& path) {
  const ojson& v = field(j, key, path);
  if (!v.is_string()) fail(path.empty() ? key : path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t get_int(const ojson& j, const std::string& key, const std::string& path) {
  const ojson& v = field(j, key, path);
  if (!v.is_number_integer()) fail(path.empty() ? key : path + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

void check_keys(const ojson& j, const std::vector<std::string>& allowed,
                const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(path.empty() ? it.key() : path + "." + it.key(), "unexpected field");
  }
}

std::vector<std::pair<std::string, SetPtr>> parse_sets(const ojson& j, SetMap& by_name) {
  const ojson& sets = field(j, "sets", "");
  if (!sets.is_object() || sets.empty()) fail("sets", "expected a non-empty object");
  std::vector<std::pair<std::string, SetPtr>> out;
  for (auto it = sets.begin(); it != sets.end(); ++it) {
    const std::string path = "sets." + it.key();
    if (!it.value().is_array() || it.value().empty()) fail(path, "expected a non-empty array");
    std::vector<Element> els;
    for (std::size_t i = 0; i < it.value().size(); ++i) {
      const ojson& e = it.value()[i];
      if (!e.is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a string");
      els.push_back(Element::parse(e.get<std::string>()));
    }
    try {
      SetPtr s = FiniteSet::make(std::move(els), it.key());
      by_name[it.key()] = s;
      out.emplace_back(it.key(), std::move(s));
    } catch (const invalid_input& e) {
      fail(path, e.what());
    }
  }
  return out;
}

SetPtr resolve_set(const ojson& j, const std::string& key, const SetMap& sets,
                   const std::string& path) {
  std::string name = get_string(j, key, path);
  auto it = sets.find(name);
  if (it == sets.end())
    fail(path.empty() ? key : path + "." + key, "unknown set '" + name + "'");
  return it->second;
}

TabulatedFn parse_fnspec(const ojson& j, const SetMap& sets, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, {"args", "codomain", "table", "builder", "n", "q", "i", "M", "domain"}, path);
  const ojson& args_j = field(j, "args", path);
  if (!args_j.is_array() || args_j.empty()) fail(path + ".args", "expected a non-empty array");
  std::vector<SetPtr> args;
  for (std::size_t i = 0; i < args_j.size(); ++i) {
    const std::string apath = path + ".args[" + std::to_string(i) + "]";
    if (!args_j[i].is_string()) fail(apath, "expected a set name");
    auto it = sets.find(args_j[i].get<std::string>());
    if (it == sets.end()) fail(apath, "unknown set '" + args_j[i].get<std::string>() + "'");
    args.push_back(it->second);
  }
  SetPtr cod = resolve_set(j, "codomain", sets, path);

  bool has_table = j.contains("table"), has_builder = j.contains("builder");
  if (has_table == has_builder) fail(path, "exactly one of 'table' or 'builder' is required");

  TabulatedFn fn = [&]() {
    if (has_table) {
      const ojson& t = j["table"];
      std::int64_t want = 1;
      for (const auto& a : args) want *= a->size();
      if (!t.is_array() || static_cast<std::int64_t>(t.size()) != want)
        fail(path + ".table", "expected " + std::to_string(want) + " entries, got " +
                                  std::to_string(t.size()));
      std::vector<std::int32_t> values;
      values.reserve(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string tpath = path + ".table[" + std::to_string(i) + "]";
        if (t[i].is_null()) {
          values.push_back(-1);
          continue;
        }
        if (!t[i].is_string()) fail(tpath, "expected a string or null");
        Element e = Element::parse(t[i].get<std::string>());
        auto idx = cod->index_of(e);
        if (!idx) fail(tpath, "'" + e.str() + "' is not an element of " + cod->name());
        values.push_back(*idx);
      }
      return TabulatedFn(args, cod, std::move(values));
    }
    std::string builder = get_string(j, "builder", path);
    BuilderParams p;
    if (j.contains("n")) p.n = get_int(j, "n", path);
    if (j.contains("q")) p.q = get_int(j, "q", path);
    if (j.contains("i")) p.i = get_int(j, "i", path);
    if (j.contains("M")) {
      const ojson& m = j["M"];
      Rational r;
      if (m.is_number_integer())
        r = Rational(m.get<std::int64_t>());
      else if (!m.is_string() || !Rational::parse(m.get<std::string>(), r))
        fail(path + ".M", "expected a rational");
      p.M = r;
    }
    try {
      return build_function(builder, args, cod, p);
    } catch (const invalid_input& e) {
      fail(path, e.what());
    }
  }();

  if (j.contains("domain")) {
    const ojson& dom = j["domain"];
    if (!dom.is_array()) fail(path + ".domain", "expected an array");
    std::vector<std::int32_t> values(static_cast<std::size_t>(fn.domain_size()), -1);
    for (std::size_t i = 0; i < dom.size(); ++i) {
      const std::string dpath = path + ".domain[" + std::to_string(i) + "]";
      const ojson& tup = dom[i];
      if (!tup.is_array() || static_cast<int>(tup.size()) != fn.arity())
        fail(dpath, "expected a tuple of " + std::to_string(fn.arity()) + " elements");
      std::vector<int> idx;
      for (std::size_t c = 0; c < tup.size(); ++c) {
        if (!tup[c].is_string()) fail(dpath, "expected element strings");
        Element e = Element::parse(tup[c].get<std::string>());
        auto k = args[c]->index_of(e);
        if (!k) fail(dpath, "'" + e.str() + "' is not an element of " + args[c]->name());
        idx.push_back(*k);
      }
      std::int64_t flat = fn.encode(idx);
      if (!fn.defined_at(flat)) fail(dpath, "tuple is not defined in the base table");
      values[static_cast<std::size_t>(flat)] = fn.value_at(flat);
    }
    fn = TabulatedFn(args, cod, std::move(values));
  }
  return fn;
}

std::vector<std::int64_t> resolve_pairs(const std::vector<std::vector<std::string>>& pairs,
                                        const SetPtr& A, const SetPtr& B,
                                        const std::string& path) {
  std::vector<std::int64_t> flats;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string ppath = path + "[" + std::to_string(i) + "]";
    if (pairs[i].size() != 2) fail(ppath, "expected a pair");
    Element a = Element::parse(pairs[i][0]), b = Element::parse(pairs[i][1]);
    auto ia = A->index_of(a), ib = B->index_of(b);
    if (!ia) fail(ppath, "'" + a.str() + "' is not an element of " + A->name());
    if (!ib) fail(ppath, "'" + b.str() + "' is not an element of " + B->name());
    flats.push_back(static_cast<std::int64_t>(*ia) * B->size() + *ib);
  }
  return flats;
}

std::vector<std::vector<std::string>> parse_pairs_json(const ojson& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of pairs");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ppath = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(ppath, "expected a pair");
    std::vector<std::string> pr;
    for (const auto& c : j[i]) {
      if (!c.is_string()) fail(ppath, "expected element strings");
      pr.push_back(c.get<std::string>());
    }
    out.push_back(std::move(pr));
  }
  return out;
}

MergePart parse_part(const ojson& j, const PartialInstance& base, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, {"side", "base", "restrict"}, path);
  MergePart part{Side::K, Element::integer(0), "", {}, ""};
  std::string side = get_string(j, "side", path);
  if (side == "K")
    part.side = Side::K;
  else if (side == "J")
    part.side = Side::J;
  else
    fail(path + ".side", "expected 'J' or 'K'");
  part.base = Element::parse(get_string(j, "base", path));
  if (j.contains("restrict")) {
    const ojson& r = j["restrict"];
    const std::string rpath = path + ".restrict";
    if (!r.is_object()) fail(rpath, "expected an object");
    check_keys(r, {"function", "pairs", "tag"}, rpath);
    part.restrict_target = get_string(r, "function", rpath);
    if (part.restrict_target != "J" && part.restrict_target != "K")
      fail(rpath + ".function", "expected 'J' or 'K'");
    auto pairs = parse_pairs_json(field(r, "pairs", rpath), rpath + ".pairs");
    part.restrict_pairs =
        part.restrict_target == "K"
            ? resolve_pairs(pairs, base.Y, base.Z, rpath + ".pairs")
            : resolve_pairs(pairs, base.X, base.Y, rpath + ".pairs");
    if (r.contains("tag")) part.tag = get_string(r, "tag", rpath);
  }
  return part;
}

ojson fnspec_json(const TabulatedFn& f) {
  ojson out;
  ojson args = ojson::array();
  for (int i = 0; i < f.arity(); ++i) args.push_back(f.domain(i)->name());
  out["args"] = std::move(args);
  out["codomain"] = f.codomain()->name();
  ojson table = ojson::array();
  for (std::int64_t t = 0; t < f.domain_size(); ++t) {
    if (f.defined_at(t))
      table.push_back(f.element_at(t).str());
    else
      table.push_back(nullptr);
  }
  out["table"] = std::move(table);
  return out;
}

ojson sets_json(const std::vector<std::pair<std::string, SetPtr>>& sets) {
  ojson out;
  for (const auto& [name, s] : sets) {
    ojson els = ojson::array();
    for (const Element& e : s->elements()) els.push_back(e.str());
    out[name] = std::move(els);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ojson parse_json_text(const std::string& text, const std::string& what) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(what + ": " + e.what());
  }
}

} // namespace

ParsedInstance parse_instance_text(const std::string& text) {
  ojson j = parse_json_text(text, "instance JSON");
  if (!j.is_object()) throw invalid_input("instance JSON: expected an object");
  if (get_int(j, "schema_version", "") != 1) fail("schema_version", "expected 1");

  ParsedInstance out;
  out.kind = get_string(j, "kind", "");
  out.name = get_string(j, "name", "");
  SetMap by_name;
  out.sets = parse_sets(j, by_name);

  if (out.kind == "triple" || out.kind == "partial") {
    check_keys(j, {"schema_version", "kind", "name", "sets", "X", "Y", "Z", "J", "K", "parts"},
               "");
    SetPtr X = resolve_set(j, "X", by_name, "");
    SetPtr Y = resolve_set(j, "Y", by_name, "");
    SetPtr Z = resolve_set(j, "Z", by_name, "");
    TabulatedFn J = parse_fnspec(field(j, "J", ""), by_name, "J");
    TabulatedFn K = parse_fnspec(field(j, "K", ""), by_name, "K");
    if (out.kind == "triple") {
      if (j.contains("parts")) fail("parts", "only valid for partial instances");
      out.triple.emplace(out.name, X, Y, Z, std::move(J), std::move(K));
    } else {
      out.partial.emplace(out.name, X, Y, Z, std::move(J), std::move(K));
      if (j.contains("parts")) {
        const ojson& parts = j["parts"];
        if (!parts.is_array() || parts.empty()) fail("parts", "expected a non-empty array");
        for (std::size_t i = 0; i < parts.size(); ++i)
          out.parts.push_back(
              parse_part(parts[i], *out.partial, "parts[" + std::to_string(i) + "]"));
      }
    }
  } else if (out.kind == "power") {
    check_keys(j, {"schema_version", "kind", "name", "sets", "A", "arity", "J", "K"}, "");
    SetPtr A = resolve_set(j, "A", by_name, "");
    std::int64_t arity = get_int(j, "arity", "");
    if (arity < 3 || arity > 16) fail("arity", "expected an integer in [3, 16]");
    TabulatedFn J = parse_fnspec(field(j, "J", ""), by_name, "J");
    TabulatedFn K = parse_fnspec(field(j, "K", ""), by_name, "K");
    out.power.emplace(out.name, A, static_cast<int>(arity), std::move(J), std::move(K));
  } else {
    fail("kind", "expected 'triple', 'power', or 'partial'");
  }
  return out;
}

ParsedInstance parse_instance_file(const std::string& path) {
  return parse_instance_text(read_file(path));
}

ojson emit_instance(const ParsedInstance& p) {
  ojson out;
  out["schema_version"] = 1;
  out["kind"] = p.kind;
  out["name"] = p.name;
  out["sets"] = sets_json(p.sets);
  if (p.kind == "power") {
    out["A"] = p.power->A->name();
    out["arity"] = p.power->n;
    out["J"] = fnspec_json(p.power->J);
    out["K"] = fnspec_json(p.power->K);
    return out;
  }
  const SetPtr &X = p.kind == "triple" ? p.triple->X : p.partial->X,
               &Y = p.kind == "triple" ? p.triple->Y : p.partial->Y,
               &Z = p.kind == "triple" ? p.triple->Z : p.partial->Z;
  out["X"] = X->name();
  out["Y"] = Y->name();
  out["Z"] = Z->name();
  out["J"] = fnspec_json(p.kind == "triple" ? p.triple->J : p.partial->J);
  out["K"] = fnspec_json(p.kind == "triple" ? p.triple->K : p.partial->K);
  if (!p.parts.empty()) {
    ojson parts = ojson::array();
    for (const MergePart& m : p.parts) {
      ojson pj;
      pj["side"] = side_str(m.side);
      pj["base"] = m.base.str();
      if (!m.restrict_target.empty()) {
        ojson rj;
        rj["function"] = m.restrict_target;
        const SetPtr &A = m.restrict_target == "K" ? Y : X,
                     &B = m.restrict_target == "K" ? Z : Y;
        ojson pairs = ojson::array();
        for (std::int64_t flat : m.restrict_pairs) {
          ojson pr = ojson::array();
          pr.push_back(A->at(static_cast<int>(flat / B->size())).str());
          pr.push_back(B->at(static_cast<int>(flat % B->size())).str());
          pairs.push_back(std::move(pr));
        }
        rj["pairs"] = std::move(pairs);
        rj["tag"] = m.tag;
        pj["restrict"] = std::move(rj);
      }
      parts.push_back(std::move(pj));
    }
    out["parts"] = std::move(parts);
  }
  return out;
}

std::string emit_instance_text(const ParsedInstance& p) {
  return emit_instance(p).dump(2) + "\n";
}

std::string fnv1a64_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string instance_digest(const ParsedInstance& p) {
  return "fnv1a64:" + fnv1a64_hex(emit_instance_text(p));
}

TabulatedFn parse_function_text(const std::string& text) {
  ojson j = parse_json_text(text, "function JSON");
  if (!j.is_object()) throw invalid_input("function JSON: expected an object");
  check_keys(j, {"schema_version", "sets", "function"}, "");
  if (get_int(j, "schema_version", "") != 1) fail("schema_version", "expected 1");
  SetMap by_name;
  parse_sets(j, by_name);
  return parse_fnspec(field(j, "function", ""), by_name, "function");
}

TabulatedFn parse_function_file(const std::string& path) {
  return parse_function_text(read_file(path));
}

RestrictSpec parse_restrict_text(const std::string& text) {
  ojson j = parse_json_text(text, "restriction JSON");
  if (!j.is_object()) throw invalid_input("restriction JSON: expected an object");
  check_keys(j, {"function", "pairs", "tag"}, "");
  RestrictSpec r;
  r.target = get_string(j, "function", "");
  if (r.target != "J" && r.target != "K") fail("function", "expected 'J' or 'K'");
  r.pairs = parse_pairs_json(field(j, "pairs", ""), "pairs");
  if (j.contains("tag")) r.tag = get_string(j, "tag", "");
  return r;
}

RestrictSpec parse_restrict_file(const std::string& path) {
  return parse_restrict_text(read_file(path));
}

PartialInstance apply_restriction(const PartialInstance& p, const RestrictSpec& r) {
  std::vector<std::int64_t> flats =
      r.target == "K" ? resolve_pairs(r.pairs, p.Y, p.Z, "pairs")
                      : resolve_pairs(r.pairs, p.X, p.Y, "pairs");
  return r.target == "K" ? p.restrict_K(flats, r.tag) : p.restrict_J(flats, r.tag);
}

ojson function_json(const TabulatedFn& f) { return fnspec_json(f); }

} // namespace feq
