#include <compnum/canonical.hh>
#include <compnum/errors.hh>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>

using std::optional;
using std::string;
using std::to_string;
using std::uint32_t;
using std::vector;

namespace compnum
{
    namespace
    {
        using Colouring = vector<unsigned>;

        auto rank_by(const vector<vector<unsigned>> & keys) -> Colouring
        {
            auto sorted = keys;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            Colouring result(keys.size());
            for (std::size_t v = 0; v < keys.size(); ++v)
                result[v] = std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin();
            return result;
        }

        auto colour_count(const Colouring & c) -> unsigned
        {
            return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
        }

        /// Individualisation-refinement search for a single connected graph.
        struct LabellingSearch
        {
            const SmallAdjacency & rows;
            unsigned n;
            optional<SmallAdjacency> best_rows;
            Colouring best_labelling;

            auto refine(Colouring colour) const -> Colouring
            {
                auto count = colour_count(colour);
                while (true) {
                    vector<vector<unsigned>> keys(n);
                    for (unsigned v = 0; v < n; ++v) {
                        keys[v].push_back(colour[v]);
                        vector<unsigned> around;
                        for (auto bits = rows[v]; bits; bits &= bits - 1)
                            around.push_back(colour[std::countr_zero(bits)]);
                        std::sort(around.begin(), around.end());
                        keys[v].insert(keys[v].end(), around.begin(), around.end());
                    }
                    auto next = rank_by(keys);
                    auto next_count = colour_count(next);
                    if (next_count == count)
                        return colour;
                    colour = std::move(next);
                    count = next_count;
                }
            }

            auto twins(unsigned u, unsigned v) const -> bool
            {
                return (rows[u] & ~(1u << v)) == (rows[v] & ~(1u << u));
            }

            auto leaf(const Colouring & colour) -> void
            {
                SmallAdjacency relabelled(n, 0);
                for (unsigned v = 0; v < n; ++v)
                    for (auto bits = rows[v]; bits; bits &= bits - 1)
                        relabelled[colour[v]] |= 1u << colour[std::countr_zero(bits)];
                if (! best_rows || relabelled < *best_rows) {
                    best_rows = std::move(relabelled);
                    best_labelling = colour;
                }
            }

            auto search(const Colouring & start) -> void
            {
                auto colour = refine(start);
                auto count = colour_count(colour);
                if (count == n) {
                    leaf(colour);
                    return;
                }

                // first non-singleton cell
                vector<unsigned> cell_size(count, 0);
                for (auto c : colour)
                    ++cell_size[c];
                unsigned target = 0;
                while (cell_size[target] == 1)
                    ++target;

                vector<unsigned> tried;
                for (unsigned v = 0; v < n; ++v) {
                    if (colour[v] != target)
                        continue;
                    // swapping twins is an automorphism fixing the current partition
                    if (std::any_of(tried.begin(), tried.end(), [&](unsigned u) { return twins(u, v); }))
                        continue;
                    tried.push_back(v);

                    Colouring child = colour;
                    for (unsigned w = 0; w < n; ++w)
                        if (colour[w] > target || (colour[w] == target && w != v))
                            ++child[w];
                    search(child);
                }
            }
        };

        auto connected_labelling(const SmallAdjacency & rows) -> Colouring
        {
            unsigned n = rows.size();
            if (n == 0)
                return {};

            // initial colours from (degree, triangles through the vertex)
            vector<vector<unsigned>> keys(n);
            for (unsigned v = 0; v < n; ++v) {
                unsigned tri = 0;
                for (auto bits = rows[v]; bits; bits &= bits - 1)
                    tri += std::popcount(rows[v] & rows[std::countr_zero(bits)]);
                keys[v] = {unsigned(std::popcount(rows[v])), tri / 2};
            }

            LabellingSearch search{rows, n, std::nullopt, {}};
            search.search(rank_by(keys));
            return search.best_labelling;
        }

        auto restrict_rows(const SmallAdjacency & rows, const vector<unsigned> & members) -> SmallAdjacency
        {
            SmallAdjacency result(members.size(), 0);
            for (unsigned i = 0; i < members.size(); ++i)
                for (unsigned j = 0; j < members.size(); ++j)
                    if (rows[members[i]] >> members[j] & 1u)
                        result[i] |= 1u << j;
            return result;
        }

        auto apply_labelling(const SmallAdjacency & rows, const vector<unsigned> & labelling) -> SmallAdjacency
        {
            SmallAdjacency result(rows.size(), 0);
            for (unsigned v = 0; v < rows.size(); ++v)
                for (auto bits = rows[v]; bits; bits &= bits - 1)
                    result[labelling[v]] |= 1u << labelling[std::countr_zero(bits)];
            return result;
        }

        auto check_small(std::size_t n) -> void
        {
            if (n > max_canonical_order)
                throw SizeError("canonical labelling supports at most " + to_string(max_canonical_order) +
                    " vertices, got " + to_string(n));
        }
    }

    auto small_adjacency(const Graph & graph) -> SmallAdjacency
    {
        check_small(graph.order());
        SmallAdjacency rows(graph.order(), 0);
        for (auto & [u, v] : graph.edges()) {
            rows[u] |= 1u << v;
            rows[v] |= 1u << u;
        }
        return rows;
    }

    auto canonical_labelling(const SmallAdjacency & rows) -> vector<unsigned>
    {
        check_small(rows.size());
        unsigned n = rows.size();

        vector<vector<unsigned>> components;
        vector<bool> seen(n, false);
        for (unsigned s = 0; s < n; ++s) {
            if (seen[s])
                continue;
            vector<unsigned> members{s};
            seen[s] = true;
            for (std::size_t i = 0; i < members.size(); ++i)
                for (auto bits = rows[members[i]]; bits; bits &= bits - 1) {
                    unsigned w = std::countr_zero(bits);
                    if (! seen[w]) {
                        seen[w] = true;
                        members.push_back(w);
                    }
                }
            std::sort(members.begin(), members.end());
            components.push_back(std::move(members));
        }

        // canonical pieces, ordered by (size, code) so the union is canonical too
        struct Piece
        {
            std::size_t size;
            string code;
            vector<unsigned> members, labelling;
        };
        vector<Piece> pieces;
        for (auto & members : components) {
            auto sub = restrict_rows(rows, members);
            auto labelling = connected_labelling(sub);
            auto code = to_graph6(apply_labelling(sub, labelling));
            pieces.push_back(Piece{members.size(), std::move(code), members, std::move(labelling)});
        }
        std::stable_sort(pieces.begin(), pieces.end(), [](const Piece & a, const Piece & b) {
            return std::tie(a.size, a.code) < std::tie(b.size, b.code);
        });

        vector<unsigned> result(n);
        unsigned offset = 0;
        for (auto & p : pieces) {
            for (unsigned i = 0; i < p.members.size(); ++i)
                result[p.members[i]] = offset + p.labelling[i];
            offset += p.members.size();
        }
        return result;
    }

    auto canonical_form(const SmallAdjacency & rows) -> CanonicalForm
    {
        return CanonicalForm{to_graph6(apply_labelling(rows, canonical_labelling(rows)))};
    }

    auto canonical_form(const Graph & graph) -> CanonicalForm
    {
        return canonical_form(small_adjacency(graph));
    }

    auto is_isomorphic(const Graph & first, const Graph & second) -> bool
    {
        check_small(first.order());
        check_small(second.order());
        if (first.order() != second.order() || first.size() != second.size())
            return false;
        return canonical_form(first) == canonical_form(second);
    }

    auto to_graph6(const SmallAdjacency & rows) -> string
    {
        auto n = rows.size();
        if (n > 62)
            throw SizeError("graph6 encoding here supports at most 62 vertices");
        string result(1, char(63 + n));
        unsigned buffer = 0, filled = 0;
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                buffer = (buffer << 1) | (rows[i] >> j & 1u);
                if (++filled == 6) {
                    result.push_back(char(63 + buffer));
                    buffer = filled = 0;
                }
            }
        if (filled > 0)
            result.push_back(char(63 + (buffer << (6 - filled))));
        return result;
    }

    auto graph_from_graph6(const string & code) -> Graph
    {
        if (code.empty() || code[0] < 63 || code[0] > 63 + 62)
            throw ParseError("bad graph6 header in '" + code + "'");
        std::size_t n = code[0] - 63;
        std::size_t bits_needed = n * (n - (n ? 1 : 0)) / 2;
        if (code.size() != 1 + (bits_needed + 5) / 6)
            throw ParseError("graph6 '" + code + "' has the wrong length");

        vector<VertexId> ids;
        for (std::size_t v = 0; v < n; ++v)
            ids.push_back(to_string(v));
        vector<IndexPair> edges;
        std::size_t bit = 0;
        for (std::size_t j = 1; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i, ++bit) {
                int c = code[1 + bit / 6] - 63;
                if (c < 0 || c > 63)
                    throw ParseError("bad graph6 character in '" + code + "'");
                if (c >> (5 - bit % 6) & 1)
                    edges.emplace_back(i, j);
            }
        return Graph::from_indices(std::move(ids), std::move(edges));
    }
}
