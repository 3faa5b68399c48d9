#include "subprod/poly_solver.hpp"

#include "subprod/checked.hpp"
#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"

namespace subprod {

namespace {

SolveResult yes(std::vector<std::int64_t> coefficients) {
  return SolveResult{Answer::Yes, Certificate{std::move(coefficients)}, 0};
}

SolveResult no() { return SolveResult{Answer::No, std::nullopt, 0}; }

// The tuple with x at position p and zero elsewhere.
Element placed(const FiniteAbelianGroup& g, std::size_t t, std::size_t p, const Element& x) {
  std::vector<Element> parts(t, g.zero());
  parts[p] = x;
  return flatten(parts);
}

}  // namespace

SolveResult solve_P_coset(const ProblemInstance& inst, const SubsetS& s) {
  require(s.group() == inst.group, "solve_P_coset: subset and instance groups differ");
  const auto& g = inst.group;
  const std::size_t m = inst.hgens.size();
  if (s.empty()) return inst.t == 0 ? yes(std::vector<std::int64_t>(m, 0)) : no();
  const auto coset = is_coset(s);
  require(coset.has_value(), "solve_P_coset: S is not a coset");

  // (a,...,a) - x* in H + G'^t ?
  std::vector<Element> gens;
  for (const auto& h : inst.hgens) gens.push_back(flatten(h));
  for (std::size_t p = 0; p < inst.t; ++p)
    for (const auto& k : coset->subgroup.gens) gens.push_back(placed(g, inst.t, p, k));
  std::vector<Element> target(inst.t);
  for (std::size_t p = 0; p < inst.t; ++p) target[p] = g.sub(coset->base, inst.xstar[p]);

  const auto lambda = subgroup_membership(SubgroupGens(g.power(inst.t), std::move(gens)), flatten(target));
  if (!lambda) return no();
  std::vector<std::int64_t> coefficients(lambda->begin(), lambda->begin() + static_cast<std::ptrdiff_t>(m));
  for (auto& c : coefficients) c = checked::mod(c, g.exponent());
  return yes(std::move(coefficients));
}

SolveResult solve_Pi_theta(const ProblemInstance& inst, const SubsetS& s) {
  require(s.group() == inst.group, "solve_Pi_theta: subset and instance groups differ");
  require(inst.is_pi(), "solve_Pi_theta: x* must be zero");
  const auto& g = inst.group;
  const std::size_t m = inst.hgens.size();
  if (s.contains(g.zero())) return yes(std::vector<std::int64_t>(m, 0));
  const SubsetS th = theta(s);
  if (th.empty()) {
    ensure(s.empty(), "solve_Pi_theta: theta of a nonempty set is empty");
    return inst.t == 0 ? yes(std::vector<std::int64_t>(m, 0)) : no();
  }
  require(is_coset(th).has_value(), "solve_Pi_theta: theta(S) is not a coset");

  // H n <T>^t, with each generator written over H's generators.
  std::vector<Element> span_gens;
  for (std::size_t p = 0; p < inst.t; ++p)
    for (const auto& x : th.elements()) span_gens.push_back(placed(g, inst.t, p, x));
  const auto power = g.power(inst.t);
  const auto inter =
      subgroup_intersect_with_coefficients(inst.subgroup(), SubgroupGens(power, std::move(span_gens)));

  std::vector<std::vector<Element>> restricted;
  for (const auto& h : inter.subgroup.gens) restricted.push_back(unflatten(g, h, inst.t));
  const ProblemInstance sub(g, inst.t, inst.xstar, std::move(restricted));
  const auto r = solve_P_coset(sub, th);
  if (r.answer != Answer::Yes) return no();

  std::vector<std::int64_t> coefficients(m, 0);
  for (std::size_t k = 0; k < inter.coefficients.size(); ++k)
    for (std::size_t i = 0; i < m; ++i)
      coefficients[i] = checked::mod(
          checked::add(coefficients[i], checked::mulmod(r.certificate->coefficients[k], inter.coefficients[k][i],
                                                        g.exponent())),
          g.exponent());
  return yes(std::move(coefficients));
}

}  // namespace subprod
