#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <optional>

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"
#include "subprod/hardness.hpp"
#include "subprod/io.hpp"
#include "subprod/poly_solver.hpp"
#include "subprod/reductions.hpp"
#include "support/acceptance.hpp"
#include "support/testing.hpp"

namespace subprod::cli {

namespace {

// Either a path to an existing file or the subset written inline.
SubsetS load_subset(const FiniteAbelianGroup& g, const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return io::parse_subset(g, io::read_file(arg));
  return io::parse_subset(g, arg);
}

ProblemInstance load_instance(const std::string& path) { return io::parse_instance(io::read_file(path)); }
Graph load_graph(const std::string& path) { return io::parse_graph(io::read_file(path)); }

void print_result(std::ostream& out, const SolveResult& r, const std::string& method) {
  out << "method: " << method << "\n";
  switch (r.answer) {
    case Answer::Yes:
      out << "yes\n" << io::format_certificate(*r.certificate);
      break;
    case Answer::No:
      out << "no\n";
      break;
    case Answer::BudgetExceeded:
      out << "budget exceeded after " << r.nodes << " nodes\n";
      break;
  }
}

int exit_code(const SolveResult& r) {
  switch (r.answer) {
    case Answer::Yes:
      return kYes;
    case Answer::No:
      return kNo;
    default:
      return kBudget;
  }
}

struct Options {
  std::string group, subset, instance, graph, pipeline, out, cert, cert_out, coloring, step, kind = "instance";
  bool pi = false, no_selfcheck = false;
  std::uint64_t budget = kDefaultBudget, seed = 0;
  std::size_t max_t = 4, max_gens = 4, vertices = 6;
  double density = 0.5;
};

int cmd_classify(const Options& o, std::ostream& out) {
  const auto g = io::parse_group(o.group);
  const auto s = load_subset(g, o.subset);
  out << to_string(o.pi ? classify_Pi(g, s) : classify_P(g, s)) << "\n";
  return kYes;
}

int cmd_theta(const Options& o, std::ostream& out) {
  const auto g = io::parse_group(o.group);
  out << io::format_subset(theta(load_subset(g, o.subset))) << "\n";
  return kYes;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.instance);
  const auto s = load_subset(inst.group, o.subset);
  require(!o.pi || inst.is_pi(), "--pi requires x* = 0");
  SolveResult r;
  std::string method;
  if (!o.pi && classify_P(inst.group, s).verdict == Verdict::InP) {
    r = solve_P_coset(inst, s);
    method = "coset membership";
  } else if (inst.is_pi() && classify_Pi(inst.group, s).verdict == Verdict::InP) {
    r = solve_Pi_theta(inst, s);
    method = "theta reduction";
  } else {
    r = oracle_solve(inst, s, o.budget);
    method = "oracle";
  }
  print_result(out, r, method);
  return exit_code(r);
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.instance);
  const auto r = oracle_solve(inst, load_subset(inst.group, o.subset), o.budget);
  print_result(out, r, "oracle");
  out << "nodes: " << r.nodes << "\n";
  return exit_code(r);
}

int cmd_reduce(const Options& o, std::ostream& out) {
  require(o.instance.empty() != o.graph.empty(), "reduce takes exactly one of --instance and --graph");
  const auto step = io::parse_step(o.step);
  PipelineState st;
  if (!o.instance.empty()) {
    st.value = load_instance(o.instance);
    if (!o.cert.empty()) st.certificate = io::parse_certificate(io::read_file(o.cert));
  } else {
    st.value = load_graph(o.graph);
    if (!o.coloring.empty()) st.coloring = io::parse_coloring(io::read_file(o.coloring));
  }
  st = apply_step(step, std::move(st));
  if (const auto* g = std::get_if<Graph>(&st.value)) {
    io::write_file(o.out, io::format_graph(*g));
    if (!o.cert_out.empty() && st.coloring) io::write_file(o.cert_out, io::format_coloring(*st.coloring));
  } else {
    io::write_file(o.out, io::format_instance(std::get<ProblemInstance>(st.value)));
    if (!o.cert_out.empty() && st.certificate) io::write_file(o.cert_out, io::format_certificate(*st.certificate));
  }
  out << "wrote " << o.out << "\n";
  return kYes;
}

int cmd_compile(const Options& o, std::ostream& out) {
  const auto g = io::parse_group(o.group);
  const auto s = load_subset(g, o.subset);
  const CompileOptions opts{!o.no_selfcheck, o.budget};
  const auto p = o.pi ? compile_hardness_Pi(s, opts) : compile_hardness_P(s, opts);
  io::write_file(o.out, io::format_pipeline(p));
  out << "wrote " << o.out << " (" << p.steps.size() << " steps, " << p.trace.size() << " checked facts"
      << (o.no_selfcheck ? "" : ", self-check passed") << ")\n";
  return kYes;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const auto p = io::parse_pipeline(io::read_file(o.pipeline));
  std::optional<Coloring> coloring;
  if (!o.coloring.empty()) coloring = io::parse_coloring(io::read_file(o.coloring));
  const auto st = apply_pipeline(p, load_graph(o.graph), coloring);
  const auto& inst = std::get<ProblemInstance>(st.value);
  io::write_file(o.out, io::format_instance(inst));
  if (!o.cert_out.empty()) {
    require(st.certificate.has_value(), "--cert-out needs --coloring");
    io::write_file(o.cert_out, io::format_certificate(*st.certificate));
  }
  out << "wrote " << o.out << " (t=" << inst.t << ", " << inst.hgens.size() << " generators)\n";
  return kYes;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto inst = load_instance(o.instance);
  const auto s = load_subset(inst.group, o.subset);
  const bool ok = verify_certificate(inst, s, io::parse_certificate(io::read_file(o.cert)));
  out << (ok ? "valid" : "invalid") << "\n";
  return ok ? kYes : kNo;
}

int cmd_gen(const Options& o, std::ostream& out) {
  testing::Rng rng(o.seed);
  std::string body;
  if (o.kind == "instance") {
    const auto g = io::parse_group(o.group);
    body = io::format_instance(testing::random_instance(rng, g, o.max_t, o.max_gens, o.pi));
  } else if (o.kind == "subset") {
    body = io::format_subset(testing::random_subset(rng, io::parse_group(o.group))) + "\n";
  } else if (o.kind == "graph") {
    std::bernoulli_distribution coin(o.density);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 1; u <= o.vertices; ++u)
      for (std::size_t v = u + 1; v <= o.vertices; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    body = io::format_graph(Graph(o.vertices, std::move(edges)));
  } else {
    throw ContractError("--kind must be instance, subset or graph");
  }
  const auto text = "# seed: " + std::to_string(o.seed) + "\n" + body;
  if (o.out.empty())
    out << text;
  else
    io::write_file(o.out, text);
  return kYes;
}

int cmd_selftest(std::ostream& out) {
  int failed = 0;
  for (const auto& r : testing::run_acceptance(testing::AcceptanceSizes::reduced())) {
    out << testing::format_result(r) << "\n";
    failed += r.passed ? 0 : 1;
  }
  return failed ? kNo : kYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coset intersection problems over finite abelian groups", "subprod"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  const auto group = [&](CLI::App* c) { c->add_option("--group", o.group, "cyclic moduli, e.g. 2,4")->required(); };
  const auto subset = [&](CLI::App* c) { c->add_option("--subset", o.subset, "subset file or literal")->required(); };
  const auto instance = [&](CLI::App* c) { c->add_option("--instance", o.instance, "instance file")->required(); };
  const auto budget = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "oracle node budget")->check(CLI::PositiveNumber);
  };
  const auto pi = [&](CLI::App* c) { c->add_flag("--pi", o.pi, "the x* = 0 variant"); };

  auto* c = app.add_subcommand("classify", "P or NP-complete, with the reason");
  group(c), subset(c), pi(c);
  c->callback([&] { action = [&] { return cmd_classify(o, out); }; });

  c = app.add_subcommand("theta", "print theta(S)");
  group(c), subset(c);
  c->callback([&] { action = [&] { return cmd_theta(o, out); }; });

  c = app.add_subcommand("solve", "decide an instance; exit 0 yes, 1 no, 3 budget exceeded");
  instance(c), subset(c), pi(c), budget(c);
  c->callback([&] { action = [&] { return cmd_solve(o, out); }; });

  c = app.add_subcommand("oracle", "decide an instance by exhaustive search");
  instance(c), subset(c), budget(c);
  c->callback([&] { action = [&] { return cmd_oracle(o, out); }; });

  c = app.add_subcommand("reduce", "apply a single reduction step");
  c->add_option("--step", o.step, "e.g. \"Translate g=(1)\"")->required();
  c->add_option("--instance", o.instance, "input instance");
  c->add_option("--graph", o.graph, "input graph");
  c->add_option("--cert", o.cert, "certificate of the input instance");
  c->add_option("--coloring", o.coloring, "coloring of the input graph");
  c->add_option("--out", o.out, "output file")->required();
  c->add_option("--cert-out", o.cert_out, "threaded certificate or coloring");
  c->callback([&] { action = [&] { return cmd_reduce(o, out); }; });

  c = app.add_subcommand("compile-hardness", "write a pipeline from 3-colorability");
  group(c), subset(c), pi(c), budget(c);
  c->add_option("--out", o.out, "pipeline file")->required();
  c->add_flag("--no-selfcheck", o.no_selfcheck, "skip the K3/K4 check");
  c->callback([&] { action = [&] { return cmd_compile(o, out); }; });

  c = app.add_subcommand("apply", "run a pipeline on a graph");
  c->add_option("--pipeline", o.pipeline, "pipeline file")->required();
  c->add_option("--graph", o.graph, "graph file")->required();
  c->add_option("--out", o.out, "instance file")->required();
  c->add_option("--coloring", o.coloring, "proper 3-coloring of the graph");
  c->add_option("--cert-out", o.cert_out, "certificate file (needs --coloring)");
  c->callback([&] { action = [&] { return cmd_apply(o, out); }; });

  c = app.add_subcommand("verify", "check a certificate; exit 0 valid, 1 invalid");
  instance(c), subset(c);
  c->add_option("--cert", o.cert, "certificate file")->required();
  c->callback([&] { action = [&] { return cmd_verify(o, out); }; });

  c = app.add_subcommand("gen", "seeded random instance, subset or graph");
  c->add_option("--seed", o.seed, "random seed")->required();
  c->add_option("--kind", o.kind, "instance, subset or graph");
  c->add_option("--group", o.group, "group for instances and subsets");
  c->add_option("--max-t", o.max_t, "largest t");
  c->add_option("--max-gens", o.max_gens, "largest generator count");
  c->add_option("--vertices", o.vertices, "graph vertex count");
  c->add_option("--density", o.density, "edge probability")->check(CLI::Range(0.0, 1.0));
  c->add_option("--out", o.out, "output file (stdout if absent)");
  pi(c);
  c->callback([&] { action = [&] { return cmd_gen(o, out); }; });

  c = app.add_subcommand("selftest", "acceptance checks at reduced sizes");
  c->callback([&] { action = [&] { return cmd_selftest(out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kYes;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    return action();
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << "\n";
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace subprod::cli
