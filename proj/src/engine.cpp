#include "engine.hpp"

#include "diagonal.hpp"
#include "errors.hpp"
#include "factorization.hpp"
#include "partial.hpp"

#include <functional>

namespace feq {

namespace {

std::string scalar_str(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

bool all_scalar(const ojson& a) {
  for (const auto& v : a)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

void render_text_value(const ojson& v, int indent, std::string& out);

void render_text_lines(const ojson& v, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const ojson& c = it.value();
      if (c.is_object() && !c.empty()) {
        out += pad + it.key() + ":\n";
        render_text_lines(c, indent + 1, out);
      } else if (c.is_array() && !c.empty() && !all_scalar(c)) {
        out += pad + it.key() + ":\n";
        render_text_lines(c, indent + 1, out);
      } else {
        out += pad + it.key() + ": ";
        render_text_value(c, indent, out);
        out += "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& c : v) {
      if (c.is_object() && !c.empty()) {
        out += pad + "-\n";
        render_text_lines(c, indent + 1, out);
      } else if (c.is_array() && !c.empty() && !all_scalar(c)) {
        out += pad + "-\n";
        render_text_lines(c, indent + 1, out);
      } else {
        out += pad + "- ";
        render_text_value(c, indent, out);
        out += "\n";
      }
    }
  }
}

void render_text_value(const ojson& v, int, std::string& out) {
  if (v.is_object()) {
    out += "{}";
    return;
  }
  if (v.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += scalar_str(v[i]);
    }
    out += "]";
    return;
  }
  out += scalar_str(v);
}

ojson el_or_null(const std::string& s) {
  if (s.empty()) return nullptr;
  return s;
}

bool tie_last_of(const RunOptions& opt) {
  if (opt.tie_break == "first") return false;
  if (opt.tie_break == "last") return true;
  throw invalid_input("--tie-break must be 'first' or 'last'");
}

Side strict_side(const RunOptions& opt, const std::string& command) {
  if (opt.side == "K") return Side::K;
  if (opt.side == "J") return Side::J;
  throw invalid_input(command + " requires --side J or --side K");
}

Element need_base(const RunOptions& opt, const std::string& command) {
  if (!opt.base) throw invalid_input(command + " requires --base");
  return Element::parse(*opt.base);
}

std::optional<TabulatedFn> maybe_function(const RunOptions& opt) {
  if (opt.function_file && opt.function_json)
    throw invalid_input("give only one of --function and --function-json");
  if (opt.function_file) return parse_function_file(*opt.function_file);
  if (opt.function_json) return parse_function_text(*opt.function_json);
  return std::nullopt;
}

TabulatedFn need_function(const RunOptions& opt, const std::string& command) {
  auto f = maybe_function(opt);
  if (!f) throw invalid_input(command + " requires --function");
  return std::move(*f);
}

std::optional<RestrictSpec> maybe_restrict(const RunOptions& opt) {
  if (opt.restrict_file && opt.restrict_json)
    throw invalid_input("give only one of --restrict and --restrict-json");
  if (opt.restrict_file) return parse_restrict_file(*opt.restrict_file);
  if (opt.restrict_json) return parse_restrict_text(*opt.restrict_json);
  return std::nullopt;
}

TripleInstance derived_triple(const ParsedInstance& ins, const std::string& command) {
  if (ins.triple) return *ins.triple;
  if (ins.power) return ins.power->derive();
  throw invalid_input(command + " needs a total instance; use partial-reduce or merge here");
}

// F on A^n reshaped onto the derived X×Y×Z layout; values coincide row-major
TabulatedFn adapt_member_fn(const ParsedInstance& ins, const TripleInstance& t,
                            const TabulatedFn& F) {
  if (!ins.power) return F;
  const PowerInstance& p = *ins.power;
  if (F.arity() != p.n) throw invalid_input("F must take " + std::to_string(p.n) + " arguments");
  for (int i = 0; i < F.arity(); ++i)
    if (!F.domain(i)->same_elements(*p.A))
      throw invalid_input("every argument of F must range over " + p.A->name());
  return TabulatedFn({t.X, t.Y, t.Z}, F.codomain(), F.values());
}

ojson reduction_json(const Reduction& red) {
  ojson out;
  out["side"] = side_str(red.side);
  out["base"] = red.base.str();
  out["quasi_inverse"] = function_json(red.qinv.g());
  out["map"] = function_json(red.map);
  return out;
}

ojson blocks_json(const SolutionClass& sc, const std::function<std::string(std::int64_t)>& label) {
  std::vector<char> in_dom(static_cast<std::size_t>(sc.partition.universe_size()), 0);
  for (std::int64_t t : sc.domain) in_dom[static_cast<std::size_t>(t)] = 1;
  ojson blocks = ojson::array();
  for (const auto& blk : sc.partition.blocks()) {
    ojson b = ojson::array();
    for (std::int64_t t : blk)
      if (in_dom[static_cast<std::size_t>(t)]) b.push_back(label(t));
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  return blocks;
}

ojson run_solve(const ParsedInstance& ins, const RunOptions&) {
  ojson result;
  if (ins.partial) {
    SolutionClass sc = solution_partition(*ins.partial);
    result["domain_size"] = sc.domain.size();
    result["block_count"] = sc.block_count;
    result["blocks"] = blocks_json(sc, [&](std::int64_t t) { return ins.partial->triple_str(t); });
    result["generator"] = function_json(sc.generator);
    return result;
  }
  TripleInstance t = derived_triple(ins, "solve");
  SolutionClass sc = solution_partition(t);
  result["domain_size"] = sc.domain.size();
  result["block_count"] = sc.block_count;
  result["blocks"] = blocks_json(sc, [&](std::int64_t tt) { return t.triple_str(tt); });
  result["generator"] = function_json(sc.generator);
  return result;
}

ojson run_member(const ParsedInstance& ins, const RunOptions& opt) {
  TabulatedFn F = need_function(opt, "member");
  ojson result;
  if (ins.partial) {
    MemberCheck mc = is_member(*ins.partial, F);
    result["member"] = mc.ok;
    result["witness"] = el_or_null(mc.witness);
    return result;
  }
  TripleInstance t = derived_triple(ins, "member");
  TabulatedFn F3 = adapt_member_fn(ins, t, F);
  MemberCheck mc = is_member(t, F3);
  result["member"] = mc.ok;
  result["witness"] = el_or_null(mc.witness);
  if (mc.ok) {
    OuterPair outer = recover_outer(t, F3);
    result["G"] = function_json(outer.G);
    result["H"] = function_json(outer.H);
  }
  return result;
}

ojson run_reduce(const ParsedInstance& ins, const RunOptions& opt) {
  if (ins.partial) throw invalid_input("use partial-reduce for partial instances");
  TripleInstance t = derived_triple(ins, "reduce");
  Side side = strict_side(opt, "reduce");
  Element base = need_base(opt, "reduce");
  bool tie = tie_last_of(opt);
  ojson result;
  result["side"] = side_str(side);
  result["base"] = base.str();
  auto F = maybe_function(opt);
  if (F) {
    TabulatedFn F3 = adapt_member_fn(ins, t, *F);
    ReducedMember rm = reduce_member(t, F3, side, base, tie, opt.enumerate_limit);
    result["range_condition"] = true;
    result["quasi_inverse"] = function_json(rm.reduction.qinv.g());
    result["map"] = function_json(rm.reduction.map);
    result["factor"] = function_json(rm.f);
    result["quasi_inverses_checked"] = rm.k_checked;
    result["all_quasi_inverses_verified"] = rm.all_k_verified;
    result["note"] = el_or_null(rm.note);
  } else {
    Reduction red = build_reduction(t, side, base, tie);
    result["range_condition"] = true;
    result["quasi_inverse"] = function_json(red.qinv.g());
    result["map"] = function_json(red.map);
  }
  return result;
}

ojson run_characterize(const ParsedInstance& ins, const RunOptions& opt) {
  TripleInstance t = derived_triple(ins, "characterize");
  CharacterizationReport rep = characterize(t, tie_last_of(opt));
  ojson result;
  result["status"] = rep.status;
  result["block_count"] = rep.block_count;
  result["reduction"] = rep.reduction ? reduction_json(*rep.reduction) : ojson(nullptr);
  ojson also = ojson::array();
  for (const auto& [side, base] : rep.also_characterizing) {
    ojson pr = ojson::array();
    pr.push_back(side_str(side));
    pr.push_back(base.str());
    also.push_back(std::move(pr));
  }
  result["also_characterizing"] = std::move(also);
  result["generator_agreement"] = rep.generator_agreement;
  result["prop11"] = rep.prop11;
  ojson trials = ojson::array();
  for (const BaseTrial& tr : rep.trials) {
    ojson tj;
    tj["side"] = side_str(tr.side);
    tj["base"] = tr.base.str();
    tj["range_ok"] = tr.range_ok;
    if (!tr.range_ok) {
      tj["range_witness"] = tr.range_witness;
    } else {
      tj["member"] = tr.member;
      if (!tr.member)
        tj["member_witness"] = tr.member_witness;
      else
        tj["kernel_matches"] = tr.kernel_matches;
    }
    trials.push_back(std::move(tj));
  }
  result["trials"] = std::move(trials);
  return result;
}

ojson lemma_json(const DiagonalLemmaReport& lr) {
  ojson out;
  out["a"] = lr.a;
  out["b"] = lr.b;
  out["b_applicable"] = lr.b_applicable;
  out["c"] = lr.c;
  out["d"] = lr.d;
  out["e_range_idempotent"] = lr.e_range_idempotent;
  out["e_idempotence_iff"] = lr.e_idempotence_iff;
  out["f_idempotent"] = lr.f_idempotent;
  out["r_R_idempotent"] = lr.r_R_idempotent;
  out["delta_R_injective"] = lr.delta_R_injective;
  out["all"] = lr.all();
  return out;
}

ojson equivalences_json(const EquivalenceReport& eq, const Element& kb, const Element& jb) {
  ojson out;
  out["k_base"] = kb.str();
  out["j_base"] = jb.str();
  out["delta_B_injective"] = eq.delta_B_injective;
  out["maps_equal"] = eq.maps_equal;
  out["r_R_idempotent"] = eq.r_R_idempotent;
  out["s_S_idempotent"] = eq.s_S_idempotent;
  out["r_R_member"] = eq.r_R_member;
  out["s_S_member"] = eq.s_S_member;
  out["i"] = eq.i;
  out["ii"] = eq.ii;
  out["iii"] = eq.iii;
  out["iv"] = eq.iv;
  out["verdict"] = eq.verdict;
  return out;
}

ojson run_diagonal(const ParsedInstance& ins, const RunOptions& opt, int& status,
                   std::string& message) {
  if (!ins.power) throw invalid_input("diagonal requires a power instance");
  const PowerInstance& p = *ins.power;
  if (opt.side != "J" && opt.side != "K" && opt.side != "both")
    throw invalid_input("--side must be J, K, or both");
  Side side = opt.side == "J" ? Side::J : Side::K;
  bool tie = tie_last_of(opt);
  std::optional<Element> base;
  if (opt.base) base = Element::parse(*opt.base);

  DiagonalCharacterization dc = diagonal_characterize(p, side, base, tie);
  ojson result;
  result["side"] = side_str(dc.side);
  result["status"] = dc.status;
  result["witness"] = el_or_null(dc.witness);
  result["base"] = dc.reduction ? ojson(dc.reduction->base.str()) : ojson(nullptr);
  if (dc.reduction) {
    TabulatedFn Rn = power_form(p, dc.reduction->map);
    result["delta_R"] = function_json(diagonal_of(Rn));
  } else {
    result["delta_R"] = nullptr;
  }
  result["r_R"] = dc.r_R ? function_json(*dc.r_R) : ojson(nullptr);
  result["r_R_idempotent"] = dc.r_R_diagonal ? ojson(dc.r_R_diagonal->idempotent) : ojson(nullptr);
  result["r_R_range_idempotent"] =
      dc.r_R_diagonal ? ojson(dc.r_R_diagonal->range_idempotent) : ojson(nullptr);
  result["member"] = dc.member;
  result["member_witness"] = el_or_null(dc.member_witness);
  result["block_count"] = dc.block_count;

  if (dc.reduction && (dc.status == "characterized" || dc.status == "not-member")) {
    TabulatedFn Rn = power_form(p, dc.reduction->map);
    QuasiInverse r = QuasiInverse::canonical(diagonal_of(Rn), tie);
    TripleInstance t = p.derive();
    SolutionClass sc = solution_partition(t);
    ReducedMember rm =
        reduce_member(t, sc.generator, dc.side, dc.reduction->base, tie, opt.enumerate_limit);
    result["lemma"] = lemma_json(verify_diagonal_lemma(Rn, rm.f, r));
  } else {
    result["lemma"] = nullptr;
  }

  if (opt.side == "both") {
    ojson eq = nullptr;
    std::string note;
    if (base) {
      try {
        eq = equivalences_json(diagonal_equivalences(p, *base, *base, tie), *base, *base);
      } catch (const hypothesis_error& e) {
        note = e.what();
      }
    } else {
      for (int ki = 0; ki < p.A->size() && eq.is_null(); ++ki)
        for (int ji = 0; ji < p.A->size() && eq.is_null(); ++ji) {
          try {
            eq = equivalences_json(diagonal_equivalences(p, p.A->at(ki), p.A->at(ji), tie),
                                   p.A->at(ki), p.A->at(ji));
          } catch (const hypothesis_error&) {
          }
        }
      if (eq.is_null()) note = "no base pair satisfies the hypotheses on both sides";
    }
    result["equivalences"] = std::move(eq);
    if (!note.empty()) result["equivalences_note"] = note;
  }

  if (dc.status.rfind("hypothesis-failed", 0) == 0) {
    status = 1;
    message = "hypothesis failed (" + dc.status + "): " + dc.witness;
  }
  return result;
}

ojson choice_json(const QuasiInverse& q) {
  const TabulatedFn& f = q.of();
  ojson out = ojson::array();
  const std::vector<int>& rng = f.range();
  for (std::size_t pos = 0; pos < rng.size(); ++pos) {
    ojson pr = ojson::array();
    pr.push_back(f.codomain()->at(rng[pos]).str());
    std::int64_t flat = q.choice_at(static_cast<int>(pos));
    if (f.arity() == 1) {
      pr.push_back(f.domain(0)->at(static_cast<int>(flat)).str());
    } else {
      std::vector<int> idx = f.decode(flat);
      std::string label = "(";
      for (std::size_t c = 0; c < idx.size(); ++c) {
        if (c) label += ",";
        label += f.domain(static_cast<int>(c))->at(idx[c]).str();
      }
      label += ")";
      pr.push_back(label);
    }
    out.push_back(std::move(pr));
  }
  return out;
}

ojson run_qinv(const ParsedInstance& ins, const RunOptions& opt) {
  auto supplied = maybe_function(opt);
  TabulatedFn f = [&]() {
    if (supplied) return std::move(*supplied);
    Side side = strict_side(opt, "qinv");
    if (ins.triple) return side == Side::K ? ins.triple->K : ins.triple->J;
    if (ins.power) return side == Side::K ? ins.power->K : ins.power->J;
    return side == Side::K ? ins.partial->K : ins.partial->J;
  }();
  bool tie = tie_last_of(opt);
  ojson result;
  result["of"] = function_json(f);
  result["count"] = QuasiInverse::count_str(f);
  QuasiInverse cq = QuasiInverse::canonical(f, tie);
  result["canonical_choice"] = choice_json(cq);
  if (f.arity() == 1) {
    TabulatedFn g = cq.g();
    result["canonical_g"] = function_json(g);
    QinvCheck qc = is_quasi_inverse(f, g);
    ojson laws;
    laws["ok"] = qc.ok;
    laws["witness"] = el_or_null(qc.witness);
    result["laws"] = std::move(laws);
  } else {
    result["canonical_g"] = nullptr;
    result["laws"] = nullptr;
  }
  try {
    std::vector<QuasiInverse> all = QuasiInverse::enumerate(f, opt.enumerate_limit);
    result["enumerated_count"] = all.size();
    ojson listed = ojson::array();
    for (const QuasiInverse& q : all) listed.push_back(choice_json(q));
    result["enumerated"] = std::move(listed);
  } catch (const invalid_input& e) {
    result["enumerated_count"] = nullptr;
    result["enumerated"] = nullptr;
    result["note"] = e.what();
  }
  return result;
}

ojson run_partial_reduce(const ParsedInstance& ins, const RunOptions& opt) {
  if (!ins.partial) throw invalid_input("partial-reduce requires a partial instance");
  PartialInstance work = *ins.partial;
  std::string tag;
  if (auto rs = maybe_restrict(opt)) {
    work = apply_restriction(work, *rs);
    tag = rs->tag;
  }
  Side side = strict_side(opt, "partial-reduce");
  Element base = need_base(opt, "partial-reduce");
  TabulatedFn F = need_function(opt, "partial-reduce");
  PartialReduction pr = partial_reduce(work, F, side, base, tie_last_of(opt));
  ojson result;
  result["side"] = side_str(side);
  result["base"] = base.str();
  result["tag"] = el_or_null(tag);
  result["domain_size"] = pr.domain.size();
  result["qualifying_count"] = pr.qualifying.size();
  ojson qual = ojson::array();
  for (std::int64_t t : pr.qualifying) qual.push_back(work.triple_str(t));
  result["qualifying"] = std::move(qual);
  result["quasi_inverse"] = function_json(pr.qinv.g());
  result["map"] = function_json(pr.map);
  result["factor"] = function_json(pr.f);
  result["note"] = el_or_null(pr.note);
  return result;
}

ojson run_merge(const ParsedInstance& ins, const RunOptions& opt) {
  if (!ins.partial) throw invalid_input("merge requires a partial instance");
  if (ins.parts.empty())
    throw invalid_input("merge requires a 'parts' list in the instance file");
  TabulatedFn F = need_function(opt, "merge");
  bool tie = tie_last_of(opt);

  std::vector<PartialReduction> prs;
  ojson parts = ojson::array();
  for (const MergePart& m : ins.parts) {
    PartialInstance work =
        m.restrict_target.empty()
            ? *ins.partial
            : (m.restrict_target == "K" ? ins.partial->restrict_K(m.restrict_pairs, m.tag)
                                        : ins.partial->restrict_J(m.restrict_pairs, m.tag));
    PartialReduction pr = partial_reduce(work, F, m.side, m.base, tie);
    ojson pj;
    pj["side"] = side_str(m.side);
    pj["base"] = m.base.str();
    pj["tag"] = el_or_null(m.tag);
    pj["domain_size"] = pr.domain.size();
    pj["qualifying_count"] = pr.qualifying.size();
    parts.push_back(std::move(pj));
    prs.push_back(std::move(pr));
  }

  MergeReport mr = merge_partial_reductions(*ins.partial, prs);
  ojson result;
  result["parts"] = std::move(parts);
  result["status"] = mr.status;
  result["domain_size"] = mr.domain_size;
  result["covered"] = mr.covered;
  ojson conflicts = ojson::array();
  for (const std::string& c : mr.conflicts) conflicts.push_back(c);
  result["conflicts"] = std::move(conflicts);
  ojson uncovered = ojson::array();
  for (std::int64_t t : mr.uncovered) uncovered.push_back(ins.partial->triple_str(t));
  result["uncovered"] = std::move(uncovered);
  ojson classes = ojson::array();
  const SetPtr& vals = prs[0].f.codomain();
  for (const MergedClass& mc : mr.classes) {
    ojson cj;
    cj["id"] = mc.id;
    ojson keys = ojson::array();
    for (const auto& [part, vi] : mc.keys) {
      ojson kj = ojson::array();
      kj.push_back(part);
      kj.push_back(prs[static_cast<std::size_t>(part)].f.domain(0)->at(vi).str());
      keys.push_back(std::move(kj));
    }
    cj["keys"] = std::move(keys);
    cj["value"] = mc.value >= 0 ? ojson(vals->at(mc.value).str()) : ojson(nullptr);
    classes.push_back(std::move(cj));
  }
  result["classes"] = std::move(classes);
  result["key_map"] = mr.key_map ? function_json(*mr.key_map) : ojson(nullptr);
  result["factor"] = mr.f ? function_json(*mr.f) : ojson(nullptr);
  return result;
}

} // namespace

std::string render_report(const ojson& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format != "text") throw invalid_input("--format must be 'text' or 'json'");
  std::string out;
  render_text_lines(report, 0, out);
  return out;
}

RunOutcome run_command(const ParsedInstance& ins, const std::string& command,
                       const RunOptions& opt) {
  RunOutcome out;
  try {
    if (opt.enumerate_limit < 1) throw invalid_input("--enumerate-limit must be >= 1");
    if (opt.format != "text" && opt.format != "json")
      throw invalid_input("--format must be 'text' or 'json'");
    if (opt.tie_break != "first" && opt.tie_break != "last")
      throw invalid_input("--tie-break must be 'first' or 'last'");
    if (opt.side != "J" && opt.side != "K" && opt.side != "both")
      throw invalid_input("--side must be J, K, or both");

    ojson result;
    if (command == "solve")
      result = run_solve(ins, opt);
    else if (command == "member")
      result = run_member(ins, opt);
    else if (command == "reduce")
      result = run_reduce(ins, opt);
    else if (command == "characterize")
      result = run_characterize(ins, opt);
    else if (command == "diagonal")
      result = run_diagonal(ins, opt, out.status, out.message);
    else if (command == "qinv")
      result = run_qinv(ins, opt);
    else if (command == "partial-reduce")
      result = run_partial_reduce(ins, opt);
    else if (command == "merge")
      result = run_merge(ins, opt);
    else
      throw invalid_input("unknown command: " + command);

    ojson report;
    report["schema_version"] = 1;
    report["command"] = command;
    ojson meta;
    meta["name"] = ins.name;
    meta["kind"] = ins.kind;
    meta["digest"] = instance_digest(ins);
    report["instance"] = std::move(meta);
    report["result"] = std::move(result);
    out.report = render_report(report, opt.format);
  } catch (const invalid_input& e) {
    return {2, "", e.what()};
  } catch (const hypothesis_error& e) {
    return {1, "", e.what()};
  } catch (const internal_error& e) {
    return {3, "", e.what()};
  } catch (const std::exception& e) {
    return {3, "", e.what()};
  }
  return out;
}

} // namespace feq
