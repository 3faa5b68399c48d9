#include "subprod/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "subprod/errors.hpp"

namespace subprod::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Lines with '#' comments removed, trimmed, empty ones dropped.
std::vector<std::string_view> content_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto p = s.find(sep);
    out.push_back(trim(s.substr(0, p)));
    if (p == std::string_view::npos) return out;
    s = s.substr(p + 1);
  }
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::size_t parse_count(std::string_view s) {
  const auto v = parse_int(s);
  if (v < 0) throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'");
  return static_cast<std::size_t>(v);
}

// "key: value" split; throws if there is no colon.
std::pair<std::string_view, std::string_view> key_value(std::string_view line) {
  const auto c = line.find(':');
  if (c == std::string_view::npos) throw ParseError("expected 'key: value', got '" + std::string(line) + "'");
  return {trim(line.substr(0, c)), trim(line.substr(c + 1))};
}

// Elements written as tuples or bare integers, separated by commas and/or blanks.
std::vector<Element> parse_element_list(std::string_view s) {
  std::vector<Element> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '(') {
      const auto close = s.find(')', i);
      if (close == std::string_view::npos) throw ParseError("unterminated element in '" + std::string(s) + "'");
      out.push_back(parse_element(s.substr(i, close - i + 1)));
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && s[j] != ',' && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back(parse_element(s.substr(i, j - i)));
      i = j;
    }
  }
  return out;
}

std::string join_elements(const std::vector<Element>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + format_element(xs[i]);
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view s) {
  std::vector<std::int64_t> out;
  if (trim(s).empty()) return out;
  for (auto part : split(s, ',')) out.push_back(parse_int(part));
  return out;
}

std::string format_matrix(const Matrix& m) {
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return join_ints(flat, ",");
}

Matrix parse_matrix(std::string_view s, std::size_t rows, std::size_t cols) {
  const auto flat = parse_int_list(s);
  if (flat.size() != rows * cols)
    throw ParseError("matrix needs " + std::to_string(rows * cols) + " entries, got " + std::to_string(flat.size()));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = flat[i * cols + j];
  return m;
}

class StepArgs {
 public:
  StepArgs(const std::string& name, const std::vector<std::string_view>& tokens) : name_(name) {
    for (auto t : tokens) {
      const auto eq = t.find('=');
      if (eq == std::string_view::npos) throw ParseError(name + ": expected key=value, got '" + std::string(t) + "'");
      if (!args_.emplace(std::string(t.substr(0, eq)), t.substr(eq + 1)).second)
        throw ParseError(name + ": repeated key '" + std::string(t.substr(0, eq)) + "'");
    }
  }
  void expect(std::initializer_list<const char*> keys) const {
    for (auto k : keys)
      if (!args_.count(k)) throw ParseError(name_ + ": missing " + k + "=");
    if (args_.size() != keys.size()) throw ParseError(name_ + ": unexpected argument");
  }
  std::string_view operator[](const char* key) const { return args_.at(key); }

 private:
  std::string name_;
  std::map<std::string, std::string_view> args_;
};

}  // namespace

std::string format_group(const FiniteAbelianGroup& g) { return join_ints(g.moduli(), ","); }

FiniteAbelianGroup parse_group(std::string_view text) {
  return FiniteAbelianGroup(parse_int_list(text));
}

std::string format_element(const Element& x) { return "(" + join_ints(x.coords, ",") + ")"; }

Element parse_element(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty element");
  if (text.front() != '(') return Element({parse_int(text)});
  if (text.back() != ')') throw ParseError("unterminated element '" + std::string(text) + "'");
  return Element(parse_int_list(text.substr(1, text.size() - 2)));
}

std::string format_subset(const SubsetS& s) {
  if (s.group().rank() != 1) return "{" + join_elements(s.elements(), ",") + "}";
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s.elements()[i][0]);
  return out + "}";
}

SubsetS parse_subset(const FiniteAbelianGroup& g, std::string_view text) {
  std::string joined;
  for (auto line : content_lines(text)) joined += std::string(line) + "\n";
  const std::string_view body = trim(joined);
  std::vector<Element> xs;
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw ParseError("subset: missing '}'");
    xs = parse_element_list(body.substr(1, body.size() - 2));
  } else {
    for (auto line : content_lines(body)) xs.push_back(parse_element(line));
  }
  for (const auto& x : xs)
    require(x.size() == g.rank(), "subset: element " + format_element(x) + " has the wrong rank for this group");
  return SubsetS(g, std::move(xs));
}

std::string format_instance(const ProblemInstance& inst) {
  const auto field = [](const char* key, const std::string& v) { return std::string(key) + (v.empty() ? "" : " " + v) + "\n"; };
  std::string out = field("group:", format_group(inst.group));
  out += "t: " + std::to_string(inst.t) + "\n";
  out += field("xstar:", join_elements(inst.xstar, " "));
  for (const auto& h : inst.hgens) out += field("gen:", join_elements(h, " "));
  return out;
}

ProblemInstance parse_instance(std::string_view text) {
  std::optional<FiniteAbelianGroup> group;
  std::optional<std::size_t> t;
  std::optional<std::vector<Element>> xstar;
  std::vector<std::vector<Element>> gens;
  for (auto line : content_lines(text)) {
    const auto [k, v] = key_value(line);
    if (k == "gen") {
      gens.push_back(parse_element_list(v));
    } else if (k == "group" && !group) {
      group = parse_group(v);
    } else if (k == "t" && !t) {
      t = parse_count(v);
    } else if (k == "xstar" && !xstar) {
      xstar = parse_element_list(v);
    } else {
      throw ParseError("instance: unexpected or repeated line '" + std::string(line) + "'");
    }
  }
  if (!group || !t || !xstar) throw ParseError("instance: needs group, t and xstar lines");
  return ProblemInstance(*group, *t, std::move(*xstar), std::move(gens));
}

std::string format_graph(const Graph& g) {
  std::string out = "p edge " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edges().size()) + "\n";
  for (const auto& [u, v] : g.edges()) out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph parse_graph(std::string_view text) {
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto line : content_lines(text)) {
    const auto w = words(line);
    if (w[0] == "c") continue;
    if (w[0] == "p") {
      if (header || w.size() != 4 || w[1] != "edge") throw ParseError("graph: bad or repeated 'p edge N M' line");
      header = {parse_count(w[2]), parse_count(w[3])};
    } else if (w[0] == "e") {
      if (!header) throw ParseError("graph: edge before 'p edge' line");
      if (w.size() != 3) throw ParseError("graph: expected 'e u v', got '" + std::string(line) + "'");
      edges.emplace_back(parse_count(w[1]), parse_count(w[2]));
    } else {
      throw ParseError("graph: unexpected line '" + std::string(line) + "'");
    }
  }
  if (!header) throw ParseError("graph: missing 'p edge N M' line");
  if (edges.size() != header->second)
    throw ParseError("graph: header promises " + std::to_string(header->second) + " edges, found " +
                     std::to_string(edges.size()));
  return Graph(header->first, std::move(edges));
}

namespace {

std::vector<std::int64_t> parse_prefixed_ints(std::string_view text, std::string_view key) {
  std::string joined;
  for (auto line : content_lines(text)) joined += std::string(line) + " ";
  std::string_view body = trim(joined);
  if (body.substr(0, key.size()) == key && body.substr(key.size(), 1) == ":") body = body.substr(key.size() + 1);
  std::vector<std::int64_t> out;
  for (auto w : words(body)) out.push_back(parse_int(w));
  return out;
}

}  // namespace

std::string format_certificate(const Certificate& c) {
  return "cert:" + (c.coefficients.empty() ? "" : " " + join_ints(c.coefficients, " ")) + "\n";
}

Certificate parse_certificate(std::string_view text) { return Certificate{parse_prefixed_ints(text, "cert")}; }

std::string format_coloring(const Coloring& c) {
  std::vector<std::int64_t> v(c.begin(), c.end());
  return "coloring:" + (v.empty() ? "" : " " + join_ints(v, " ")) + "\n";
}

Coloring parse_coloring(std::string_view text) {
  Coloring out;
  for (auto v : parse_prefixed_ints(text, "coloring")) {
    if (v < 1) throw ParseError("coloring: colors start at 1");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string format_step(const ReductionStep& s) {
  std::string out = "step: " + step_name(s);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, step::Translate>) {
          out += " g=" + format_element(x.g);
        } else if constexpr (std::is_same_v<T, step::MapThrough>) {
          out += " src=" + format_group(x.f.source()) + " dst=" + format_group(x.f.target()) +
                 " m=" + format_matrix(x.f.matrix());
        } else if constexpr (std::is_same_v<T, step::DivideOutLift>) {
          out += " ambient=" + format_group(x.k.ambient) + " gens=" + join_elements(x.k.gens, ",");
        } else if constexpr (std::is_same_v<T, step::TransformDouble>) {
          out += " group=" + format_group(x.c.source()) + " m=" + format_matrix(x.c.matrix()) +
                 " g=" + format_element(x.g);
        } else if constexpr (std::is_same_v<T, step::PiFromP>) {
          out += " order=" + join_elements(x.order, ",");
        } else if constexpr (std::is_same_v<T, step::GadgetColoringFull>) {
          out += " group=" + format_group(x.group);
        } else if constexpr (std::is_same_v<T, step::GadgetS01>) {
          out += " n=" + std::to_string(x.n);
        } else if constexpr (std::is_same_v<T, step::KColFrom3Col>) {
          out += " k=" + std::to_string(x.k);
        }
      },
      s);
  return out;
}

ReductionStep parse_step(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 5) == "step:") text = trim(text.substr(5));
  auto w = words(text);
  if (w.empty()) throw ParseError("step: missing name");
  const std::string name(w[0]);
  const StepArgs args(name, std::vector<std::string_view>(w.begin() + 1, w.end()));
  if (name == "Translate") {
    args.expect({"g"});
    return step::Translate{parse_element(args["g"])};
  }
  if (name == "MapThrough") {
    args.expect({"src", "dst", "m"});
    const auto src = parse_group(args["src"]), dst = parse_group(args["dst"]);
    return step::MapThrough{Homomorphism(src, dst, parse_matrix(args["m"], dst.rank(), src.rank()))};
  }
  if (name == "DivideOutLift") {
    args.expect({"ambient", "gens"});
    return step::DivideOutLift{SubgroupGens(parse_group(args["ambient"]), parse_element_list(args["gens"]))};
  }
  if (name == "TransformDouble") {
    args.expect({"group", "m", "g"});
    const auto g = parse_group(args["group"]);
    return step::TransformDouble{Homomorphism(g, g, parse_matrix(args["m"], g.rank(), g.rank())), parse_element(args["g"])};
  }
  if (name == "PFromPi") {
    args.expect({});
    return step::PFromPi{};
  }
  if (name == "PiFromP") {
    args.expect({"order"});
    return step::PiFromP{parse_element_list(args["order"])};
  }
  if (name == "GadgetColoringFull") {
    args.expect({"group"});
    return step::GadgetColoringFull{parse_group(args["group"])};
  }
  if (name == "GadgetS01") {
    args.expect({"n"});
    return step::GadgetS01{parse_int(args["n"])};
  }
  if (name == "KColFrom3Col") {
    args.expect({"k"});
    return step::KColFrom3Col{parse_count(args["k"])};
  }
  throw ParseError("unknown step '" + name + "'");
}

std::string format_pipeline(const ReductionPipeline& p) {
  std::string out = "pipeline\ngroup: " + format_group(p.group) + "\nsubset: " + format_subset(p.subset) +
                    "\nvariant: " + (p.variant == Variant::P ? "P" : "Pi") + "\n";
  for (const auto& s : p.steps) out += format_step(s) + "\n";
  return out;
}

ReductionPipeline parse_pipeline(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.size() < 4 || lines[0] != "pipeline") throw ParseError("pipeline: expected 'pipeline' header");
  const auto expect_key = [&](std::size_t i, std::string_view key) {
    const auto [k, v] = key_value(lines[i]);
    if (k != key) throw ParseError("pipeline: expected '" + std::string(key) + ":' on line " + std::to_string(i + 1));
    return v;
  };
  ReductionPipeline p;
  p.group = parse_group(expect_key(1, "group"));
  p.subset = parse_subset(p.group, expect_key(2, "subset"));
  const auto v = expect_key(3, "variant");
  if (v == "P") {
    p.variant = Variant::P;
  } else if (v == "Pi") {
    p.variant = Variant::Pi;
  } else {
    throw ParseError("pipeline: variant must be P or Pi");
  }
  for (std::size_t i = 4; i < lines.size(); ++i) {
    if (key_value(lines[i]).first != "step") throw ParseError("pipeline: expected 'step:' line");
    p.steps.push_back(parse_step(lines[i]));
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << contents;
}

}  // namespace subprod::io
