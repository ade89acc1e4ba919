#include <compnum/errors.hh>
#include <compnum/hamming.hh>

#include <algorithm>
#include <sstream>
#include <stdexcept>

using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace compnum
{
    namespace
    {
        auto checked_mul(uint64_t a, uint64_t b) -> uint64_t
        {
            uint64_t r;
            if (__builtin_mul_overflow(a, b, &r))
                throw std::overflow_error("competition number arithmetic overflows 64 bits");
            return r;
        }

        auto checked_add(uint64_t a, uint64_t b) -> uint64_t
        {
            uint64_t r;
            if (__builtin_add_overflow(a, b, &r))
                throw std::overflow_error("competition number arithmetic overflows 64 bits");
            return r;
        }

        auto checked_pow(uint64_t base, unsigned exponent) -> uint64_t
        {
            uint64_t r = 1;
            for (unsigned i = 0; i < exponent; ++i)
                r = checked_mul(r, base);
            return r;
        }
    }

    HammingVertex::HammingVertex(vector<unsigned> coordinates, unsigned q) :
        _coordinates(std::move(coordinates))
    {
        if (_coordinates.empty())
            throw PreconditionError("a Hamming vertex needs at least one coordinate");
        for (auto c : _coordinates)
            if (c < 1 || c > q)
                throw PreconditionError("coordinate " + to_string(c) + " outside 1.." + to_string(q));
    }

    auto HammingVertex::id() const -> VertexId
    {
        string result;
        for (std::size_t i = 0; i < _coordinates.size(); ++i) {
            if (i > 0)
                result.push_back('.');
            result += to_string(_coordinates[i]);
        }
        return result;
    }

    auto HammingVertex::parse(const VertexId & id, unsigned q) -> HammingVertex
    {
        vector<unsigned> coordinates;
        std::size_t start = 0;
        while (true) {
            auto end = id.find('.', start);
            auto part = id.substr(start, end == string::npos ? string::npos : end - start);
            if (part.empty() || ! std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
                part.size() > 9)
                throw ParseError("'" + id + "' is not a Hamming vertex id");
            auto value = std::stoul(part);
            if (value < 1 || value > q)
                throw ParseError("'" + id + "' has a coordinate outside 1.." + to_string(q));
            coordinates.push_back(value);
            if (end == string::npos)
                break;
            start = end + 1;
        }
        return HammingVertex(std::move(coordinates), q);
    }

    auto hamming_distance(const HammingVertex & x, const HammingVertex & y) -> std::size_t
    {
        if (x.dimension() != y.dimension())
            throw PreconditionError("Hamming distance between tuples of lengths " + to_string(x.dimension()) + " and " +
                to_string(y.dimension()));
        std::size_t d = 0;
        for (std::size_t i = 0; i < x.dimension(); ++i)
            if (x[i] != y[i])
                ++d;
        return d;
    }

    auto hamming_order(unsigned n, unsigned q) -> uint64_t
    {
        if (n < 1 || q < 1)
            throw PreconditionError("Hamming graphs need n >= 1 and q >= 1");
        uint64_t order = 1;
        for (unsigned i = 0; i < n; ++i) {
            order *= q;
            if (order > max_hamming_order)
                throw SizeError("H(" + to_string(n) + "," + to_string(q) + ") would have " +
                    (i + 1 == n ? to_string(order) : "more than " + to_string(order)) + " vertices, above the limit of " +
                    to_string(max_hamming_order));
        }
        return order;
    }

    auto hamming_index(const HammingVertex & x, unsigned q) -> VertexIndex
    {
        VertexIndex index = 0;
        for (auto c : x.coordinates())
            index = index * q + (c - 1);
        return index;
    }

    auto hamming_vertex(VertexIndex index, unsigned n, unsigned q) -> HammingVertex
    {
        vector<unsigned> coordinates(n);
        for (unsigned i = n; i-- > 0;) {
            coordinates[i] = index % q + 1;
            index /= q;
        }
        return HammingVertex(std::move(coordinates), q);
    }

    auto hamming_graph(unsigned n, unsigned q) -> Graph
    {
        auto order = hamming_order(n, q);
        vector<VertexId> ids;
        ids.reserve(order);
        for (VertexIndex v = 0; v < order; ++v)
            ids.push_back(hamming_vertex(v, n, q).id());

        vector<IndexPair> edges;
        edges.reserve(order * n * (q - 1) / 2);
        // stride of coordinate j (0-based) in the lexicographic index
        vector<VertexIndex> stride(n, 1);
        for (unsigned j = n - 1; j-- > 0;)
            stride[j] = stride[j + 1] * q;
        for (VertexIndex v = 0; v < order; ++v)
            for (unsigned j = 0; j < n; ++j) {
                auto digit = v / stride[j] % q;
                for (auto other = digit + 1; other < q; ++other)
                    edges.emplace_back(v, v + (other - digit) * stride[j]);
            }
        return Graph::from_indices(std::move(ids), std::move(edges));
    }

    Clique::Clique(const Graph & host, vector<VertexIndex> members) :
        _members(std::move(members))
    {
        std::sort(_members.begin(), _members.end());
        if (std::adjacent_find(_members.begin(), _members.end()) != _members.end())
            throw PreconditionError("clique has a repeated member");
        for (auto v : _members)
            if (v >= host.order())
                throw PreconditionError("clique member index out of range");
        for (std::size_t i = 0; i < _members.size(); ++i)
            for (std::size_t j = i + 1; j < _members.size(); ++j)
                if (! host.adjacent(_members[i], _members[j]))
                    throw PreconditionError("not a clique: '" + host.id(_members[i]) + "' and '" + host.id(_members[j]) +
                        "' are not adjacent");
    }

    auto Clique::contains(VertexIndex v) const -> bool
    {
        return std::binary_search(_members.begin(), _members.end(), v);
    }

    CliqueFamily::CliqueFamily(std::shared_ptr<const Graph> host, vector<Clique> cliques) :
        _host(std::move(host)),
        _cliques(std::move(cliques))
    {
        for (auto & c : _cliques)
            for (auto v : c.members())
                if (v >= _host->order())
                    throw PreconditionError("clique family member refers to a vertex outside its host");
    }

    auto CliqueFamily::coverage() const -> vector<vector<std::size_t>>
    {
        auto & edges = _host->edges();
        vector<vector<std::size_t>> result(edges.size());
        for (std::size_t c = 0; c < _cliques.size(); ++c) {
            auto & m = _cliques[c].members();
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = i + 1; j < m.size(); ++j) {
                    auto e = std::lower_bound(edges.begin(), edges.end(), IndexPair{m[i], m[j]});
                    result[e - edges.begin()].push_back(c);
                }
        }
        return result;
    }

    auto maximal_clique(const Graph & host, unsigned n, unsigned q, unsigned j, const vector<unsigned> & p) -> Clique
    {
        if (j < 1 || j > n)
            throw PreconditionError("coordinate index " + to_string(j) + " outside 1.." + to_string(n));
        if (p.size() + 1 != n)
            throw PreconditionError("pattern must have " + to_string(n - 1) + " entries");
        for (auto c : p)
            if (c < 1 || c > q)
                throw PreconditionError("pattern entry " + to_string(c) + " outside 1.." + to_string(q));
        if (host.order() != hamming_order(n, q))
            throw PreconditionError("host is not H(" + to_string(n) + "," + to_string(q) + ")");

        vector<VertexIndex> members;
        for (unsigned value = 1; value <= q; ++value) {
            auto coordinates = p;
            coordinates.insert(coordinates.begin() + (j - 1), value);
            members.push_back(hamming_index(HammingVertex(std::move(coordinates), q), q));
        }
        return Clique(host, std::move(members));
    }

    auto maximal_clique_family(unsigned n, unsigned q) -> CliqueFamily
    {
        if (n < 2 || q < 2)
            throw PreconditionError("the maximal clique family is defined for n >= 2 and q >= 2");
        auto host = std::make_shared<const Graph>(hamming_graph(n, q));
        auto patterns = hamming_order(n - 1, q);
        vector<Clique> cliques;
        cliques.reserve(n * patterns);
        for (unsigned j = 1; j <= n; ++j)
            for (VertexIndex p = 0; p < patterns; ++p)
                cliques.push_back(maximal_clique(*host, n, q, j, hamming_vertex(p, n - 1, q).coordinates()));
        return CliqueFamily(std::move(host), std::move(cliques));
    }

    auto containing_maximal_clique(const Graph & host, unsigned n, unsigned q, const vector<VertexIndex> & clique) -> Clique
    {
        if (clique.size() < 2)
            throw PreconditionError("containing maximal clique needs a clique of size at least 2");
        Clique checked(host, clique);

        auto first = HammingVertex::parse(host.id(checked.members()[0]), q);
        auto second = HammingVertex::parse(host.id(checked.members()[1]), q);
        unsigned j = 0;
        for (unsigned i = 0; i < n; ++i)
            if (first[i] != second[i])
                j = i + 1;

        vector<unsigned> p = first.coordinates();
        p.erase(p.begin() + (j - 1));
        auto result = maximal_clique(host, n, q, j, p);
        for (auto v : checked.members())
            if (! result.contains(v))
                throw PreconditionError("clique is not contained in a single maximal clique");
        return result;
    }

    auto is_hamming_maximal_clique(const vector<VertexId> & members, unsigned n, unsigned q) -> bool
    {
        if (members.size() != q || q < 2)
            return false;
        vector<HammingVertex> xs;
        try {
            for (auto & id : members) {
                xs.push_back(HammingVertex::parse(id, q));
                if (xs.back().dimension() != n)
                    return false;
            }
        }
        catch (const ParseError &) {
            return false;
        }

        // the free coordinate is the one where the first two differ
        std::optional<unsigned> free;
        for (unsigned i = 0; i < n; ++i)
            if (xs[0][i] != xs[1][i])
                free = i;
        if (! free)
            return false;
        vector<bool> seen(q + 1, false);
        for (auto & x : xs) {
            for (unsigned i = 0; i < n; ++i)
                if (i != *free && x[i] != xs[0][i])
                    return false;
            if (seen[x[*free]])
                return false;
            seen[x[*free]] = true;
        }
        return true;
    }

    auto KnownCompetitionNumber::describe(unsigned n, unsigned q) const -> string
    {
        std::ostringstream out;
        out << "k(H(" << n << "," << q << ")) ";
        if (value)
            out << "= " << *value;
        else if (bound_offset)
            out << "unknown; <= " << *bound_offset << " + k(H(" << q << "," << q << "))";
        else
            out << "unknown";
        return out.str();
    }

    auto known_competition_number(unsigned n, unsigned q) -> KnownCompetitionNumber
    {
        if (n < 1 || q < 1)
            throw PreconditionError("known_competition_number needs n >= 1 and q >= 1");

        KnownCompetitionNumber result;
        if (q == 1)
            result.value = 0;
        else if (n == 1)
            result.value = 1;
        else if (q == 2)
            result.value = checked_add(checked_mul(n - 2, checked_pow(2, n - 1)), 2);
        else if (n == 2)
            result.value = 2;
        else if (n == 3)
            result.value = 6;
        else if (q == 3)
            result.value = checked_add(checked_mul(n - 3, checked_pow(3, n - 1)), 6);
        else if (q <= n)
            result.bound_offset = checked_mul(n - q, checked_pow(q, n - 1));
        return result;
    }

    auto lifted_competition_bound(unsigned n, unsigned q, uint64_t base) -> uint64_t
    {
        if (q < 2 || q > n)
            throw PreconditionError("lifted bound needs 2 <= q <= n");
        return checked_add(checked_mul(n - q, checked_pow(q, n - 1)), base);
    }
}
