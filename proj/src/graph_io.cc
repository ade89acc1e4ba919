#include <compnum/errors.hh>
#include <compnum/graph_io.hh>

#include <cctype>
#include <fstream>
#include <sstream>

using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace compnum
{
    namespace
    {
        auto ordered_pair(const string & a, const string & b) -> Json
        {
            return a < b ? Json::array({a, b}) : Json::array({b, a});
        }

        auto id_list(const Json & json, const char * field) -> vector<VertexId>
        {
            if (! json.contains(field) || ! json[field].is_array())
                throw ParseError(string("missing array field '") + field + "'");
            vector<VertexId> ids;
            for (std::size_t i = 0; i < json[field].size(); ++i) {
                auto & v = json[field][i];
                if (! v.is_string())
                    throw ParseError(string(field) + "[" + to_string(i) + "] is not a string");
                ids.push_back(v.get<string>());
            }
            return ids;
        }

        auto pair_list(const Json & json, const char * field) -> vector<pair<VertexId, VertexId>>
        {
            if (! json.contains(field) || ! json[field].is_array())
                throw ParseError(string("missing array field '") + field + "'");
            vector<pair<VertexId, VertexId>> result;
            for (std::size_t i = 0; i < json[field].size(); ++i) {
                auto & e = json[field][i];
                if (! e.is_array() || e.size() != 2 || ! e[0].is_string() || ! e[1].is_string())
                    throw ParseError(string(field) + "[" + to_string(i) + "] = " + e.dump() +
                        " must be a pair of vertex ids");
                result.emplace_back(e[0].get<string>(), e[1].get<string>());
            }
            return result;
        }

        auto quote(const string & id) -> string
        {
            string result = "\"";
            for (char c : id) {
                if (c == '"' || c == '\\')
                    result.push_back('\\');
                result.push_back(c);
            }
            result.push_back('"');
            return result;
        }

        /// Minimal DOT tokenizer: identifiers, quoted strings, edge operators and punctuation.
        struct DotLexer
        {
            const string & text;
            std::size_t pos = 0;
            int line = 1;

            struct Token
            {
                enum Kind
                {
                    Identifier,
                    EdgeOp,
                    Punct,
                    End
                } kind;
                string value;
                int line;
            };

            [[noreturn]] auto fail(const string & message, int at_line) const -> void
            {
                throw ParseError("DOT line " + to_string(at_line) + ": " + message);
            }

            auto skip_space() -> void
            {
                while (pos < text.size()) {
                    char c = text[pos];
                    if (c == '\n') {
                        ++line;
                        ++pos;
                    }
                    else if (std::isspace(static_cast<unsigned char>(c)))
                        ++pos;
                    else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
                        while (pos < text.size() && text[pos] != '\n')
                            ++pos;
                    }
                    else if (c == '#' && (pos == 0 || text[pos - 1] == '\n')) {
                        while (pos < text.size() && text[pos] != '\n')
                            ++pos;
                    }
                    else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
                        auto end = text.find("*/", pos + 2);
                        if (end == string::npos)
                            fail("unterminated comment", line);
                        for (auto i = pos; i < end; ++i)
                            if (text[i] == '\n')
                                ++line;
                        pos = end + 2;
                    }
                    else
                        break;
                }
            }

            auto next() -> Token
            {
                skip_space();
                if (pos >= text.size())
                    return {Token::End, "", line};
                char c = text[pos];
                int at = line;
                if (c == '"') {
                    string value;
                    ++pos;
                    while (true) {
                        if (pos >= text.size())
                            fail("unterminated string", at);
                        char d = text[pos++];
                        if (d == '"')
                            break;
                        if (d == '\\' && pos < text.size()) {
                            char e = text[pos++];
                            if (e != '"' && e != '\\')
                                value.push_back('\\');
                            value.push_back(e);
                        }
                        else {
                            if (d == '\n')
                                ++line;
                            value.push_back(d);
                        }
                    }
                    return {Token::Identifier, value, at};
                }
                if (c == '-' && pos + 1 < text.size() && (text[pos + 1] == '-' || text[pos + 1] == '>')) {
                    pos += 2;
                    return {Token::EdgeOp, text.substr(pos - 2, 2), at};
                }
                if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-') {
                    auto start = pos;
                    while (pos < text.size() &&
                        (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '.' ||
                            (text[pos] == '-' && ! (pos + 1 < text.size() && (text[pos + 1] == '-' || text[pos + 1] == '>')))))
                        ++pos;
                    return {Token::Identifier, text.substr(start, pos - start), at};
                }
                ++pos;
                return {Token::Punct, string(1, c), at};
            }
        };
    }

    auto graph_to_json(const Graph & graph) -> Json
    {
        Json edges = Json::array();
        for (auto & [u, v] : graph.edges())
            edges.push_back(ordered_pair(graph.id(u), graph.id(v)));
        return Json{{"vertices", graph.ids()}, {"edges", std::move(edges)}};
    }

    auto digraph_to_json(const Digraph & digraph) -> Json
    {
        Json arcs = Json::array();
        for (auto & [u, v] : digraph.arcs())
            arcs.push_back(Json::array({digraph.id(u), digraph.id(v)}));
        return Json{{"vertices", digraph.ids()}, {"arcs", std::move(arcs)}};
    }

    auto graph_from_json(const Json & json) -> Graph
    {
        if (! json.is_object())
            throw ParseError("graph JSON must be an object");
        auto vertices = id_list(json, "vertices");
        auto edges = pair_list(json, "edges");
        try {
            return Graph(std::move(vertices), edges);
        }
        catch (const GraphError & e) {
            throw ParseError(string("invalid graph: ") + e.what());
        }
    }

    auto digraph_from_json(const Json & json) -> Digraph
    {
        if (! json.is_object())
            throw ParseError("digraph JSON must be an object");
        auto vertices = id_list(json, "vertices");
        auto arcs = pair_list(json, "arcs");
        try {
            return Digraph(std::move(vertices), arcs);
        }
        catch (const GraphError & e) {
            throw ParseError(string("invalid digraph: ") + e.what());
        }
    }

    auto graph_to_dot(const Graph & graph, const string & name) -> string
    {
        std::ostringstream out;
        out << "graph " << quote(name) << " {\n";
        for (auto & id : graph.ids())
            out << "  " << quote(id) << ";\n";
        for (auto & [u, v] : graph.edges()) {
            auto & a = graph.id(u);
            auto & b = graph.id(v);
            out << "  " << quote(a < b ? a : b) << " -- " << quote(a < b ? b : a) << ";\n";
        }
        out << "}\n";
        return out.str();
    }

    auto digraph_to_dot(const Digraph & digraph, const string & name) -> string
    {
        std::ostringstream out;
        out << "digraph " << quote(name) << " {\n";
        for (auto & id : digraph.ids())
            out << "  " << quote(id) << ";\n";
        for (auto & [u, v] : digraph.arcs())
            out << "  " << quote(digraph.id(u)) << " -> " << quote(digraph.id(v)) << ";\n";
        out << "}\n";
        return out.str();
    }

    auto graph_or_digraph_from_dot(const string & text) -> std::variant<Graph, Digraph>
    {
        DotLexer lexer{text};
        auto token = lexer.next();
        if (token.kind == DotLexer::Token::Identifier && token.value == "strict")
            token = lexer.next();
        if (token.kind != DotLexer::Token::Identifier || (token.value != "graph" && token.value != "digraph"))
            lexer.fail("expected 'graph' or 'digraph'", token.line);
        bool directed = token.value == "digraph";
        string edge_op = directed ? "->" : "--";

        token = lexer.next();
        if (token.kind == DotLexer::Token::Identifier)
            token = lexer.next();
        if (token.kind != DotLexer::Token::Punct || token.value != "{")
            lexer.fail("expected '{'", token.line);

        vector<VertexId> vertices;
        std::unordered_map<VertexId, bool> declared;
        vector<pair<VertexId, VertexId>> links;
        auto declare = [&](const VertexId & id) {
            if (declared.emplace(id, true).second)
                vertices.push_back(id);
        };

        token = lexer.next();
        while (true) {
            if (token.kind == DotLexer::Token::End)
                lexer.fail("missing closing '}'", token.line);
            if (token.kind == DotLexer::Token::Punct && token.value == "}")
                break;
            if (token.kind == DotLexer::Token::Punct && token.value == ";") {
                token = lexer.next();
                continue;
            }
            if (token.kind == DotLexer::Token::Identifier &&
                (token.value == "graph" || token.value == "node" || token.value == "edge")) {
                // default attribute statement
                auto peek = lexer.next();
                if (peek.kind == DotLexer::Token::Punct && peek.value == "[") {
                    while (! (peek.kind == DotLexer::Token::Punct && peek.value == "]")) {
                        if (peek.kind == DotLexer::Token::End)
                            lexer.fail("unterminated attribute list", token.line);
                        peek = lexer.next();
                    }
                    token = lexer.next();
                    continue;
                }
                lexer.fail("unexpected keyword '" + token.value + "'", token.line);
            }
            if (token.kind != DotLexer::Token::Identifier)
                lexer.fail("unexpected '" + token.value + "'", token.line);

            vector<VertexId> chain{token.value};
            int statement_line = token.line;
            token = lexer.next();
            if (token.kind == DotLexer::Token::Punct && token.value == "=") {
                // graph attribute like rankdir=LR
                lexer.next();
                token = lexer.next();
                continue;
            }
            while (token.kind == DotLexer::Token::EdgeOp) {
                if (token.value != edge_op)
                    lexer.fail("edge operator '" + token.value + "' does not match graph kind", token.line);
                auto endpoint = lexer.next();
                if (endpoint.kind != DotLexer::Token::Identifier)
                    lexer.fail("edge starting at '" + chain.back() + "' is missing its second endpoint", statement_line);
                chain.push_back(endpoint.value);
                token = lexer.next();
            }
            if (token.kind == DotLexer::Token::Punct && token.value == "[") {
                while (! (token.kind == DotLexer::Token::Punct && token.value == "]")) {
                    if (token.kind == DotLexer::Token::End)
                        lexer.fail("unterminated attribute list", statement_line);
                    token = lexer.next();
                }
                token = lexer.next();
            }
            for (auto & id : chain)
                declare(id);
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                links.emplace_back(chain[i], chain[i + 1]);
        }

        try {
            if (directed)
                return Digraph(std::move(vertices), links);
            return Graph(std::move(vertices), links);
        }
        catch (const GraphError & e) {
            throw ParseError(string("invalid DOT graph: ") + e.what());
        }
    }

    auto parse_json_text(const string & text, const string & source) -> Json
    {
        try {
            return Json::parse(text);
        }
        catch (const Json::parse_error & e) {
            throw ParseError(source + ": " + e.what());
        }
    }

    auto read_text_file(const string & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw ParseError("cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    auto write_text_file(const string & path, const string & contents) -> void
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw Error("cannot write '" + path + "'");
        out << contents;
    }

    auto dump_json(const Json & json) -> string
    {
        return json.dump(2) + "\n";
    }
}
