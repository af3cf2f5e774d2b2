#include "graphonlab/graphs.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "graphonlab/errors.hpp"

namespace graphonlab {

void SimpleGraph::add_edge(int i, int j) {
    if (i == j) throw OutOfRange("loops are not allowed");
    if (i < 0 || j < 0 || i >= n || j >= n) throw OutOfRange("edge endpoint out of range");
    if (i > j) std::swap(i, j);
    edges.insert({i, j});
}

bool SimpleGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return edges.count({i, j}) != 0;
}

SimpleGraph complete_graph(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

SimpleGraph empty_graph(int n) { return SimpleGraph(n); }

SimpleGraph cycle_graph(int n) {
    if (n < 3) throw OutOfRange("cycles need at least 3 vertices");
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

SimpleGraph path_graph(int n) {
    SimpleGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

SimpleGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SimpleGraph g;
    bool have_n = false;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("n=", 0) == 0) {
            try {
                g.n = std::stoi(line.substr(2));
            } catch (const std::exception&) {
                throw SyntaxError("invalid vertex count", 2);
            }
            if (g.n < 0) throw OutOfRange("negative vertex count");
            have_n = true;
        } else if (line.rfind("edges=", 0) == 0) {
            if (!have_n) throw SyntaxError("edges= before n=", 0);
            std::istringstream es(line.substr(6));
            std::string tok;
            while (es >> tok) {
                auto dash = tok.find('-');
                if (dash == std::string::npos) throw SyntaxError("edge token missing '-'", 6);
                try {
                    g.add_edge(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
                } catch (const OutOfRange&) {
                    throw;
                } catch (const std::exception&) {
                    throw SyntaxError("invalid edge token '" + tok + "'", 6);
                }
            }
        } else {
            throw SyntaxError("unrecognized line '" + line + "'", 0);
        }
    }
    if (!have_n) throw SyntaxError("missing n= line", 0);
    return g;
}

std::string render_graph(const SimpleGraph& g) {
    std::ostringstream out;
    out << "n=" << g.n << "\nedges=";
    bool first = true;
    for (const auto& [i, j] : g.edges) {
        if (!first) out << ' ';
        out << i << '-' << j;
        first = false;
    }
    out << '\n';
    return out.str();
}

int pair_slot(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::uint64_t mask_of(const SimpleGraph& g) {
    if (g.n > 10) throw OutOfRange("graphs above 10 vertices are unsupported");
    std::uint64_t m = 0;
    for (const auto& [i, j] : g.edges) m |= std::uint64_t(1) << pair_slot(i, j, g.n);
    return m;
}

SimpleGraph graph_from_mask(int n, std::uint64_t mask) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask >> pair_slot(i, j, n) & 1) g.add_edge(i, j);
    return g;
}

namespace {

struct Canonicalizer {
    int n;
    std::array<std::uint16_t, 10> adj{};
    std::uint64_t best;
    int total_bits;
    std::array<int, 10> perm{};
    std::uint16_t used = 0;

    // Bits appear in placement order: when position j is filled, the j bits
    // toward positions 0..j-1 are appended (column-major pair order).
    void rec(int pos, std::uint64_t code, int bits) {
        if (pos == n) {
            best = std::min(best, code);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used >> v & 1) continue;
            std::uint64_t row = 0;
            for (int i = 0; i < pos; ++i) row = row << 1 | (adj[v] >> perm[i] & 1);
            std::uint64_t next = code << pos | row;
            int nbits = bits + pos;
            // prefix pruning against the incumbent
            if (next > (best >> (total_bits - nbits))) continue;
            perm[pos] = v;
            used |= std::uint16_t(1) << v;
            rec(pos + 1, next, nbits);
            used &= ~(std::uint16_t(1) << v);
        }
    }
};

}  // namespace

std::uint64_t canonical_code(const SimpleGraph& g) {
    if (g.n > 10) throw OutOfRange("graphs above 10 vertices are unsupported");
    if (g.n <= 1) return 0;
    Canonicalizer c;
    c.n = g.n;
    for (const auto& [i, j] : g.edges) {
        c.adj[i] |= std::uint16_t(1) << j;
        c.adj[j] |= std::uint16_t(1) << i;
    }
    c.total_bits = g.n * (g.n - 1) / 2;
    c.best = ~std::uint64_t(0) >> (64 - c.total_bits);
    c.rec(0, 0, 0);
    return c.best;
}

std::uint64_t canonical_code_mask(int n, std::uint64_t mask) {
    return canonical_code(graph_from_mask(n, mask));
}

bool isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n == b.n && canonical_code(a) == canonical_code(b);
}

std::vector<SimpleGraph> isomorphism_classes(int n) {
    if (n < 1 || n > 5) throw OutOfRange("isomorphism class enumeration supports 1..5 vertices");
    int bits = n * (n - 1) / 2;
    std::vector<std::uint64_t> seen;
    std::vector<SimpleGraph> classes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
        std::uint64_t code = canonical_code_mask(n, mask);
        if (std::find(seen.begin(), seen.end(), code) == seen.end()) {
            seen.push_back(code);
            classes.push_back(graph_from_mask(n, mask));
        }
    }
    std::sort(classes.begin(), classes.end(), [](const SimpleGraph& a, const SimpleGraph& b) {
        if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
        return canonical_code(a) < canonical_code(b);
    });
    return classes;
}

std::vector<std::uint64_t> labeled_copies(const SimpleGraph& g) {
    if (g.n > 10) throw OutOfRange("graphs above 10 vertices are unsupported");
    std::vector<int> perm(g.n);
    for (int i = 0; i < g.n; ++i) perm[i] = i;
    std::vector<std::uint64_t> copies;
    do {
        std::uint64_t m = 0;
        for (const auto& [i, j] : g.edges) m |= std::uint64_t(1) << pair_slot(perm[i], perm[j], g.n);
        copies.push_back(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(copies.begin(), copies.end());
    copies.erase(std::unique(copies.begin(), copies.end()), copies.end());
    return copies;
}

}  // namespace graphonlab
