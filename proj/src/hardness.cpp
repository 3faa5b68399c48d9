#include "subprod/hardness.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"

namespace subprod {

namespace {

using Kind = Assertion::Kind;

SubsetS shifted(const SubsetS& s, const Element& x) {
  std::vector<Element> out;
  for (const auto& y : s.elements()) out.push_back(s.group().add(y, x));
  return SubsetS(s.group(), std::move(out));
}

std::vector<Element> span_of(const FiniteAbelianGroup& g, std::vector<Element> gens) {
  return *subgroup_enumerate(SubgroupGens(g, std::move(gens)), static_cast<std::size_t>(g.order()));
}

bool in_a(const SubsetS& s, const Element& a, const Element& b, const Element& x) {
  const auto& g = s.group();
  return s.contains(x) && s.contains(g.add(x, a)) && s.contains(g.add(x, b)) && !s.contains(g.add(g.add(x, a), b));
}

std::vector<Element> a_set(const SubsetS& s, const Element& a, const Element& b) {
  std::vector<Element> out;
  for (const auto& x : s.elements())
    if (in_a(s, a, b, x)) out.push_back(x);
  return out;
}

std::string set_string(const SubsetS& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + short_string(s.elements()[i]);
  return out + "} in " + to_string(s.group());
}

Assertion make(Kind kind, SubsetS set, std::vector<Element> elements = {}) {
  Assertion a;
  a.kind = kind;
  a.set = std::move(set);
  a.elements = std::move(elements);
  return a;
}

class Recorder {
 public:
  explicit Recorder(std::vector<Assertion>* out) : out_(out) {}
  void check(Assertion a) {
    ensure(recheck(a), "hardness compiler: structural claim failed: " + describe(a));
    if (out_) out_->push_back(std::move(a));
  }

 private:
  std::vector<Assertion>* out_;
};

// S_phi for phi(x) = c x + u.
std::optional<outcome::Recurse> attempt(const SubsetS& t, std::int64_t c, const Element& u) {
  const auto& g = t.group();
  std::vector<Element> kept;
  for (const auto& x : t.elements())
    if (t.contains(g.add(g.scale(c, x), u))) kept.push_back(x);
  SubsetS phi(g, std::move(kept));
  if (phi.size() < 2 || phi.size() >= t.size() || is_coset(phi)) return std::nullopt;
  return outcome::Recurse{step::TransformDouble{Homomorphism::multiplication(g, c), u}, g, std::move(phi), g.zero()};
}

// a - b in t.
std::optional<outcome::Recurse> reflection_branch(const SubsetS& t, const Element& a, const Element& b, Recorder& rec) {
  const auto& g = t.group();
  if (auto r = attempt(t, -1, g.add(a, b))) return r;
  rec.check(make(Kind::CosetInside, t, {a, g.sub(b, a)}));
  if (auto r = attempt(t, 1, g.sub(a, b))) return r;
  rec.check(make(Kind::Periodic, t, {g.sub(b, a)}));
  const SubgroupGens k(g, {g.sub(b, a)});
  const auto q = quotient_group(g, k);
  std::vector<Element> image;
  for (const auto& x : t.elements()) image.push_back(q.proj(x));
  SubsetS sigma(q.group, std::move(image));
  rec.check(make(Kind::NotCoset, sigma));
  return outcome::Recurse{step::DivideOutLift{k}, q.group, std::move(sigma), g.zero()};
}

std::optional<outcome::Recurse> chain(const SubsetS& t, const Element& a, const Element& b, Recorder& rec) {
  const auto& g = t.group();
  if (auto r = attempt(t, -1, b)) return r;
  rec.check(make(Kind::CosetInside, t, {g.zero(), b}));
  if (auto r = attempt(t, -1, a)) return r;
  rec.check(make(Kind::CosetInside, t, {g.zero(), a}));
  const Element ab = g.add(a, b);
  if (auto r = attempt(t, 1, g.neg(ab))) return r;
  rec.check(make(Kind::NotMember, t, {g.neg(ab)}));
  if (auto r = attempt(t, 1, g.sub(a, b))) return r;
  if (auto r = attempt(t, 1, ab)) return r;
  rec.check(make(Kind::CosetInside, t, {g.neg(a), g.sub(a, b)}));
  return std::nullopt;
}

std::optional<outcome::Recurse> analyse(const SubsetS& t, const Element& a, const Element& b, Recorder& rec) {
  const auto& g = t.group();
  if (t.contains(g.sub(a, b))) return reflection_branch(t, a, b, rec);
  if (t.contains(g.sub(b, a))) return reflection_branch(t, b, a, rec);
  return chain(t, a, b, rec);
}

// <gens> with its embedding; the identity when gens generate everything.
Presentation restrict_to(const FiniteAbelianGroup& g, std::vector<Element> gens) {
  if (static_cast<std::int64_t>(span_of(g, gens).size()) == g.order()) return {g, Homomorphism::identity(g)};
  return present_subgroup(SubgroupGens(g, std::move(gens)));
}

// Each step with the group of the instance it produces.
struct Emitted {
  ReductionStep step;
  FiniteAbelianGroup group;
};

std::vector<ReductionStep> peephole(std::vector<Emitted> in) {
  std::vector<Emitted> out;
  for (auto& e : in) {
    if (auto* tr = std::get_if<step::Translate>(&e.step)) {
      if (!out.empty())
        if (auto* prev = std::get_if<step::Translate>(&out.back().step)) {
          prev->g = e.group.add(prev->g, tr->g);
          if (prev->g == e.group.zero()) out.pop_back();
          continue;
        }
      if (tr->g == e.group.zero()) continue;
    }
    if (auto* m = std::get_if<step::MapThrough>(&e.step); m && m->f.is_identity()) continue;
    out.push_back(std::move(e));
  }
  std::vector<ReductionStep> steps;
  for (auto& e : out) steps.push_back(std::move(e.step));
  return steps;
}

class Compiler {
 public:
  std::vector<Assertion> trace;

  // Steps reducing 3-colorability to P_{G,S}.
  std::vector<Emitted> compile(const SubsetS& s) {
    const auto& g = s.group();
    rec_.check(make(Kind::NotCoset, s));
    if (s.size() == 2) {
      const Element base = s.elements()[0], d = g.sub(s.elements()[1], base);
      const std::int64_t n = g.order_of(d);
      Matrix col(g.rank(), 1);
      for (std::size_t i = 0; i < g.rank(); ++i) col(i, 0) = d[i];
      const Homomorphism iota(FiniteAbelianGroup({n}), g, std::move(col));
      return {{step::GadgetS01{n}, iota.source()}, {step::MapThrough{iota}, g}, {step::Translate{base}, g}};
    }
    const auto sab = find_sab(s);
    ensure(sab.has_value(), "hardness compiler: no (s,a,b) for a non-coset");
    rec_.check(make(Kind::SabTriple, s, {sab->s, sab->a, sab->b}));
    const SubsetS t = shifted(s, g.neg(sab->s));
    const auto pres = restrict_to(g, {sab->a, sab->b});
    std::vector<Element> inside;
    Element a, b;
    for (const auto& y : pres.group.elements()) {
      const Element img = pres.embed(y);
      if (t.contains(img)) inside.push_back(y);
      if (img == sab->a) a = y;
      if (img == sab->b) b = y;
    }
    auto steps = special(SubsetS(pres.group, std::move(inside)), a, b);
    steps.push_back({step::MapThrough{pres.embed}, g});
    steps.push_back({step::Translate{sab->s}, g});
    return steps;
  }

 private:
  Recorder rec_{&trace};

  std::vector<Emitted> special(const SubsetS& t, const Element& a, const Element& b) {
    const auto& g = t.group();
    const auto out = pigsspecial_resolve(t, a, b, &trace);
    if (const auto* r = std::get_if<outcome::Recurse>(&out)) {
      Assertion m = make(Kind::MeasureDecreases, t);
      m.before = g.order() + static_cast<std::int64_t>(t.size());
      m.after = r->group.order() + static_cast<std::int64_t>(r->subset.size());
      rec_.check(std::move(m));
      auto steps = compile(r->subset);
      steps.push_back({r->step, g});
      steps.push_back({step::Translate{r->offset}, g});
      return steps;
    }
    std::vector<Element> kg;
    for (const auto& x : {g.scale(2, a), g.scale(2, b)})
      if (x != g.zero()) kg.push_back(x);
    const SubgroupGens k(g, kg);
    const auto q = quotient_group(g, k);
    std::vector<Element> image;
    for (const auto& x : t.elements()) image.push_back(q.proj(x));
    const SubsetS sigma(q.group, std::move(image));
    rec_.check(make(Kind::KleinComplement, sigma));
    const Element p = q.proj(g.add(a, b));
    ensure(!sigma.contains(p), "hardness compiler: a+b survives in the quotient");
    std::vector<Emitted> steps{
        {step::KColFrom3Col{4}, FiniteAbelianGroup()}, {step::GadgetColoringFull{q.group}, q.group}, {step::Translate{p}, q.group}};
    if (kg.empty())
      ensure(q.group == g && q.proj.is_identity(), "hardness compiler: trivial quotient is not the identity");
    else
      steps.push_back({step::DivideOutLift{k}, g});
    return steps;
  }
};

ReductionPipeline finish(const SubsetS& s, Variant v, std::vector<Emitted> steps, std::vector<Assertion> trace,
                         const CompileOptions& opts) {
  ReductionPipeline p;
  p.group = s.group();
  p.subset = s;
  p.variant = v;
  p.steps = peephole(std::move(steps));
  p.trace = std::move(trace);
  if (opts.selfcheck) {
    const auto r = selfcheck(p, opts.budget);
    if (r.k4_answer == Answer::BudgetExceeded) throw BudgetExceededError("self-check: K4 search exceeded the budget");
    ensure(r.ok(), "self-check failed on the compiled pipeline");
  }
  return p;
}

}  // namespace

std::string describe(const Assertion& a) {
  std::string els;
  for (const auto& x : a.elements) els += " " + short_string(x);
  const std::string on = " on " + set_string(a.set);
  switch (a.kind) {
    case Kind::NotCoset: return "not a coset" + on;
    case Kind::SabTriple: return "(s,a,b) =" + els + on;
    case Kind::InA: return "(a,b,g) =" + els + " has g in A" + on;
    case Kind::CosetInside: return "base, generators" + els + " span a coset inside the set" + on;
    case Kind::NotMember: return els.substr(1) + " is not a member" + on;
    case Kind::Periodic: return "periodic under" + els + on;
    case Kind::ClosureIsA: return "(a, b, closure) =" + els + " closure equals A" + on;
    case Kind::EvenPattern: return "(a,b) =" + els + " even pattern" + on;
    case Kind::KleinComplement: return "C2 x C2 minus a point" + on;
    case Kind::ThetaFixed: return "theta fixes the set" + on;
    case Kind::MeasureDecreases:
      return "measure " + std::to_string(a.before) + " -> " + std::to_string(a.after);
  }
  return "?";
}

bool recheck(const Assertion& a) {
  const auto& s = a.set;
  const auto& g = s.group();
  const auto& e = a.elements;
  const auto arity = [&](std::size_t n) { return e.size() == n; };
  switch (a.kind) {
    case Kind::NotCoset: return s.size() >= 2 && !is_coset(s).has_value();
    case Kind::SabTriple:
      return arity(3) && e[1] != e[2] && s.contains(e[0]) && s.contains(g.add(e[0], e[1])) &&
             s.contains(g.add(e[0], e[2])) && !s.contains(g.add(g.add(e[0], e[1]), e[2]));
    case Kind::InA: return arity(3) && in_a(s, e[0], e[1], e[2]);
    case Kind::CosetInside: {
      if (e.empty()) return false;
      const auto sub = span_of(g, std::vector<Element>(e.begin() + 1, e.end()));
      return std::all_of(sub.begin(), sub.end(), [&](const Element& x) { return s.contains(g.add(e[0], x)); });
    }
    case Kind::NotMember: return arity(1) && !s.contains(e[0]);
    case Kind::Periodic: return arity(1) && shifted(s, e[0]) == s;
    case Kind::ClosureIsA: {
      if (e.size() < 2) return false;
      std::vector<Element> closure(e.begin() + 2, e.end());
      std::sort(closure.begin(), closure.end());
      return a_set(s, e[0], e[1]) == closure;
    }
    case Kind::EvenPattern: {
      if (!arity(2)) return false;
      if (static_cast<std::int64_t>(span_of(g, {e[0], e[1]}).size()) != g.order()) return false;
      const auto two_g = span_of(g, {g.scale(2, e[0]), g.scale(2, e[1])});
      std::vector<Element> complement;
      for (const auto& x : two_g) complement.push_back(g.add(g.add(e[0], e[1]), x));
      std::sort(complement.begin(), complement.end());
      for (const auto& x : g.elements())
        if (s.contains(x) == std::binary_search(complement.begin(), complement.end(), x)) return false;
      return a_set(s, e[0], e[1]) == two_g;
    }
    case Kind::KleinComplement: return g.order() == 4 && g.exponent() == 2 && s.size() == 3;
    case Kind::ThetaFixed: return theta(s) == s;
    case Kind::MeasureDecreases: return a.before > a.after;
  }
  return false;
}

bool recheck_trace(const ReductionPipeline& p) {
  return std::all_of(p.trace.begin(), p.trace.end(), [](const Assertion& a) { return recheck(a); });
}

CaseOutcome pigsspecial_step(const SubsetS& s, const Element& a, const Element& b, const Element& g,
                             std::vector<Assertion>* trace) {
  const auto& grp = s.group();
  require(grp.contains(a) && grp.contains(b) && grp.contains(g), "pigsspecial_step: element not in group");
  require(a != b, "pigsspecial_step: a = b");
  require(static_cast<std::int64_t>(span_of(grp, {a, b}).size()) == grp.order(),
          "pigsspecial_step: a and b do not generate the group");
  require(in_a(s, a, b, g), "pigsspecial_step: need g, g+a, g+b in S and g+a+b not in S");

  Recorder rec(trace);
  rec.check(make(Kind::InA, s, {a, b, g}));
  const SubsetS t = shifted(s, grp.neg(g));
  if (auto r = analyse(t, a, b, rec)) {
    r->offset = g;
    return *r;
  }
  const Element next_a = grp.sub(g, grp.scale(2, a));
  rec.check(make(Kind::InA, s, {a, b, next_a}));
  if (auto r = analyse(t, b, a, rec)) {
    r->offset = g;
    return *r;
  }
  const Element next_b = grp.sub(g, grp.scale(2, b));
  rec.check(make(Kind::InA, s, {a, b, next_b}));
  return outcome::Advance{{next_a, next_b}};
}

CaseOutcome pigsspecial_resolve(const SubsetS& s, const Element& a, const Element& b, std::vector<Assertion>* trace) {
  const auto& grp = s.group();
  std::set<Element> visited{grp.zero()};
  std::deque<Element> work{grp.zero()};
  while (!work.empty()) {
    const Element g = work.front();
    work.pop_front();
    auto out = pigsspecial_step(s, a, b, g, trace);
    if (std::holds_alternative<outcome::Recurse>(out)) return out;
    for (const auto& x : std::get<outcome::Advance>(out).next)
      if (visited.insert(x).second) work.push_back(x);
  }
  Recorder rec(trace);
  std::vector<Element> closure{a, b};
  closure.insert(closure.end(), visited.begin(), visited.end());
  rec.check(make(Kind::ClosureIsA, s, std::move(closure)));
  rec.check(make(Kind::EvenPattern, s, {a, b}));
  return outcome::BaseEvenPattern{};
}

ReductionPipeline compile_hardness_P(const SubsetS& s, const CompileOptions& opts) {
  require(classify_P(s.group(), s).verdict == Verdict::NPComplete, "compile_hardness_P: target is in P");
  Compiler c;
  auto steps = c.compile(s);
  return finish(s, Variant::P, std::move(steps), std::move(c.trace), opts);
}

ReductionPipeline compile_hardness_Pi(const SubsetS& s, const CompileOptions& opts) {
  const auto& g = s.group();
  require(classify_Pi(g, s).verdict == Verdict::NPComplete, "compile_hardness_Pi: target is in P");
  const SubsetS t = theta(s);
  const auto pres = restrict_to(g, t.elements());
  std::vector<Element> inside;
  for (const auto& y : pres.group.elements())
    if (t.contains(pres.embed(y))) inside.push_back(y);
  const SubsetS tk(pres.group, std::move(inside));

  Compiler c;
  Recorder rec(&c.trace);
  rec.check(make(Kind::ThetaFixed, t));
  rec.check(make(Kind::ThetaFixed, tk));
  auto steps = c.compile(tk);
  steps.push_back({step::PiFromP{tk.elements()}, pres.group});
  steps.push_back({step::MapThrough{pres.embed}, g});
  return finish(s, Variant::Pi, std::move(steps), std::move(c.trace), opts);
}

PipelineState apply_pipeline(const ReductionPipeline& p, const Graph& graph, const std::optional<Coloring>& coloring) {
  if (coloring) require(is_proper_coloring(graph, *coloring, 3), "apply_pipeline: not a proper 3-coloring");
  PipelineState st{graph, coloring, std::nullopt};
  for (const auto& s : p.steps) st = apply_step(s, std::move(st));
  const auto* inst = std::get_if<ProblemInstance>(&st.value);
  require(inst != nullptr && inst->group == p.group, "apply_pipeline: steps do not end in an instance over the target group");
  return st;
}

SelfCheckResult selfcheck(const ReductionPipeline& p, std::uint64_t budget) {
  SelfCheckResult r;
  const auto k3 = apply_pipeline(p, Graph::complete(3), Coloring{1, 2, 3});
  r.k3_certificate_ok = k3.certificate && verify_certificate(std::get<ProblemInstance>(k3.value), p.subset, *k3.certificate);
  const auto k4 = oracle_solve(std::get<ProblemInstance>(apply_pipeline(p, Graph::complete(4)).value), p.subset, budget);
  r.k4_answer = k4.answer;
  r.k4_nodes = k4.nodes;
  return r;
}

}  // namespace subprod
