#pragma once

#include <string>
#include <string_view>

#include "subprod/abelian.hpp"
#include "subprod/hardness.hpp"
#include "subprod/problem.hpp"
#include "subprod/reductions.hpp"

// Text formats. Every parse_* accepts what the matching format_* writes and
// throws ParseError on malformed text (ContractError if the text is well
// formed but the value is invalid). '#' starts a comment in line formats.
namespace subprod::io {

/// "4" or "2,2"; the trivial group of rank 0 is the empty string.
std::string format_group(const FiniteAbelianGroup& g);
FiniteAbelianGroup parse_group(std::string_view text);

/// "(1,2)"; "()" for rank 0.
std::string format_element(const Element& x);
Element parse_element(std::string_view text);

/// "{0,1}" over cyclic groups, "{(0,1),(1,0)}" otherwise. Parsing also
/// accepts one element per line, and bare integers over cyclic groups.
std::string format_subset(const SubsetS& s);
SubsetS parse_subset(const FiniteAbelianGroup& g, std::string_view text);

/// group: d1,...,dk / t: N / xstar: (..) (..) / gen: (..) (..) per generator.
std::string format_instance(const ProblemInstance& inst);
ProblemInstance parse_instance(std::string_view text);

/// "p edge N M" followed by M lines "e u v". Lines starting with 'c' are comments.
std::string format_graph(const Graph& g);
Graph parse_graph(std::string_view text);

/// "cert: c1 c2 ..."
std::string format_certificate(const Certificate& c);
Certificate parse_certificate(std::string_view text);

/// "coloring: c1 c2 ..." (1-based colors).
std::string format_coloring(const Coloring& c);
Coloring parse_coloring(std::string_view text);

/// Header lines (group, subset, variant) then one "step: Name key=value ..." line per step.
std::string format_step(const ReductionStep& s);
ReductionStep parse_step(std::string_view text);
std::string format_pipeline(const ReductionPipeline& p);
ReductionPipeline parse_pipeline(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace subprod::io
