#include "builders.hpp"

#include "errors.hpp"

#include <functional>

namespace feq {

namespace {

const Rational& rat_arg(const std::vector<SetPtr>& args, const std::vector<int>& idx, int pos,
                        const std::string& builder) {
  const Element& e = args[static_cast<std::size_t>(pos)]->at(idx[static_cast<std::size_t>(pos)]);
  if (!e.is_rational())
    throw invalid_input("builder " + builder + " needs numeric arguments; got " + e.str());
  return e.rat();
}

std::int64_t int_arg(const std::vector<SetPtr>& args, const std::vector<int>& idx, int pos,
                     const std::string& builder) {
  const Rational& r = rat_arg(args, idx, pos, builder);
  if (!r.is_integer())
    throw invalid_input("builder " + builder + " needs integer arguments; got " + r.str());
  return r.num;
}

int lookup(const SetPtr& cod, const Element& e, const std::string& builder) {
  if (auto i = cod->index_of(e)) return *i;
  throw invalid_input("builder " + builder + " computes " + e.str() +
                      " which is not in codomain " + cod->name());
}

void require_arity(const std::vector<SetPtr>& args, int want, const std::string& builder) {
  if (static_cast<int>(args.size()) != want)
    throw invalid_input("builder " + builder + " takes " + std::to_string(want) +
                        " arguments, got " + std::to_string(args.size()));
}

std::int64_t require_n(const BuilderParams& p, const std::string& builder) {
  if (!p.n || *p.n <= 0) throw invalid_input("builder " + builder + " requires n >= 1");
  return *p.n;
}

std::int64_t require_q(const BuilderParams& p, const std::string& builder) {
  if (!p.q || *p.q <= 0) throw invalid_input("builder " + builder + " requires q >= 1");
  return *p.q;
}

void check_grid(const std::vector<SetPtr>& args, std::int64_t q, const std::string& builder) {
  for (const auto& s : args)
    for (const Element& e : s->elements()) {
      if (!e.is_rational())
        throw invalid_input("builder " + builder + " needs numeric arguments; got " + e.str());
      if ((e.rat().num * q) % e.rat().den != 0)
        throw invalid_input("builder " + builder + ": " + e.str() + " is not on the 1/" +
                            std::to_string(q) + " grid");
    }
}

TabulatedFn modular(const std::string& builder, const std::vector<SetPtr>& args,
                    const SetPtr& cod, std::int64_t n,
                    const std::function<std::int64_t(std::int64_t, std::int64_t, int)>& step) {
  if (args.empty()) throw invalid_input("builder " + builder + " needs at least one argument");
  return TabulatedFn::tabulate(args, cod, [&](const std::vector<int>& idx) {
    std::int64_t acc = int_arg(args, idx, 0, builder) % n;
    for (int p = 1; p < static_cast<int>(args.size()); ++p)
      acc = step(acc, int_arg(args, idx, p, builder) % n, p);
    acc = ((acc % n) + n) % n;
    return lookup(cod, Element::integer(acc), builder);
  });
}

TabulatedFn extremum(const std::string& builder, const std::vector<SetPtr>& args,
                     const SetPtr& cod, bool take_max) {
  if (args.empty()) throw invalid_input("builder " + builder + " needs at least one argument");
  return TabulatedFn::tabulate(args, cod, [&](const std::vector<int>& idx) {
    Rational acc = rat_arg(args, idx, 0, builder);
    for (int p = 1; p < static_cast<int>(args.size()); ++p) {
      const Rational& r = rat_arg(args, idx, p, builder);
      acc = take_max ? rat_max(acc, r) : rat_min(acc, r);
    }
    return lookup(cod, Element::rational(acc), builder);
  });
}

} // namespace

bool is_known_builder(const std::string& b) {
  return b == "mod_add" || b == "mod_diff" || b == "mod_mul" || b == "max" || b == "min" ||
         b == "proj" || b == "clip_half_max" || b == "half_mean" || b == "truncated_max1";
}

TabulatedFn build_function(const std::string& builder, const std::vector<SetPtr>& args,
                           const SetPtr& cod, const BuilderParams& p) {
  if (builder == "mod_add") {
    std::int64_t n = require_n(p, builder);
    return modular(builder, args, cod, n,
                   [](std::int64_t a, std::int64_t b, int) { return a + b; });
  }
  if (builder == "mod_diff") {
    std::int64_t n = require_n(p, builder);
    return modular(builder, args, cod, n,
                   [](std::int64_t a, std::int64_t b, int pos) {
                     return pos % 2 == 1 ? a - b : a + b;
                   });
  }
  if (builder == "mod_mul") {
    std::int64_t n = require_n(p, builder);
    return modular(builder, args, cod, n,
                   [](std::int64_t a, std::int64_t b, int) { return a * b; });
  }
  if (builder == "max") return extremum(builder, args, cod, true);
  if (builder == "min") return extremum(builder, args, cod, false);
  if (builder == "proj") {
    if (!p.i || *p.i < 0 || *p.i >= static_cast<std::int64_t>(args.size()))
      throw invalid_input("builder proj requires i in [0, arity)");
    int at = static_cast<int>(*p.i);
    return TabulatedFn::tabulate(args, cod, [&](const std::vector<int>& idx) {
      return lookup(cod, args[static_cast<std::size_t>(at)]->at(idx[static_cast<std::size_t>(at)]),
                    builder);
    });
  }
  if (builder == "clip_half_max") {
    require_arity(args, 2, builder);
    check_grid(args, require_q(p, builder), builder);
    return TabulatedFn::tabulate(args, cod, [&](const std::vector<int>& idx) {
      Rational s = rat_arg(args, idx, 0, builder) + rat_arg(args, idx, 1, builder);
      return lookup(cod, Element::rational(Rational(1, 2) * rat_max(Rational(1), s)), builder);
    });
  }
  if (builder == "half_mean") {
    require_arity(args, 2, builder);
    check_grid(args, require_q(p, builder), builder);
    return TabulatedFn::tabulate(args, cod, [&](const std::vector<int>& idx) {
      Rational s = rat_arg(args, idx, 0, builder) + rat_arg(args, idx, 1, builder);
      return lookup(cod, Element::rational(Rational(1, 2) * s), builder);
    });
  }
  if (builder == "truncated_max1") {
    require_arity(args, 2, builder);
    check_grid(args, require_q(p, builder), builder);
    if (!p.M) throw invalid_input("builder truncated_max1 requires M");
    Rational cap = *p.M;
    return TabulatedFn::tabulate(args, cod, [&](const std::vector<int>& idx) {
      Rational s = rat_arg(args, idx, 0, builder) + rat_arg(args, idx, 1, builder);
      return lookup(cod, Element::rational(rat_min(cap, rat_max(Rational(1), s))), builder);
    });
  }
  throw invalid_input("unknown builder: " + builder);
}

} // namespace feq
