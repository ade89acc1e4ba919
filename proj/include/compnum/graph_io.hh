#ifndef COMPNUM_GUARD_GRAPH_IO_HH
#define COMPNUM_GUARD_GRAPH_IO_HH 1

#include <compnum/graph.hh>

#include <json.hpp>

#include <string>
#include <variant>

namespace compnum
{
    using Json = nlohmann::json;

    /// {"vertices": [...], "edges": [[u, v], ...]}, each edge with its lexicographically smaller id first.
    auto graph_to_json(const Graph & graph) -> Json;

    /// {"vertices": [...], "arcs": [[tail, head], ...]}
    auto digraph_to_json(const Digraph & digraph) -> Json;

    /// Throws ParseError naming the offending field.
    auto graph_from_json(const Json & json) -> Graph;
    auto digraph_from_json(const Json & json) -> Digraph;

    auto graph_to_dot(const Graph & graph, const std::string & name = "G") -> std::string;
    auto digraph_to_dot(const Digraph & digraph, const std::string & name = "D") -> std::string;

    /// Parses the subset of DOT that graph_to_dot and digraph_to_dot emit, plus
    /// bare identifiers, comments and ignored attribute lists. Throws ParseError with a line number.
    auto graph_or_digraph_from_dot(const std::string & text) -> std::variant<Graph, Digraph>;

    /// Parses JSON text, rethrowing syntax errors as ParseError with the position.
    auto parse_json_text(const std::string & text, const std::string & source) -> Json;

    auto read_text_file(const std::string & path) -> std::string;
    auto write_text_file(const std::string & path, const std::string & contents) -> void;

    /// Two-space indented dump followed by a newline; byte stable for equal values.
    auto dump_json(const Json & json) -> std::string;
}

#endif
