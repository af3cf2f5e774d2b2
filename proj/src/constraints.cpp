#include "graphonlab/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "graphonlab/errors.hpp"
#include "graphonlab/rng.hpp"
#include "graphonlab/sampling.hpp"

namespace graphonlab {

namespace {

// ---- expression parser --------------------------------------------------

struct ExprParser {
    const std::string& text;
    std::size_t pos = 0;
    bool allow_names;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, pos + 1); }
    bool at(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool eat(char c) {
        if (!at(c)) return false;
        ++pos;
        return true;
    }

    DensityExpression parse_expr() {
        auto e = parse_term();
        while (eat('+')) {
            if (e.kind != DensityExpression::Kind::Sum) {
                DensityExpression s;
                s.kind = DensityExpression::Kind::Sum;
                s.children.push_back(std::move(e));
                e = std::move(s);
            }
            e.children.push_back(parse_term());
        }
        return e;
    }

    DensityExpression parse_term() {
        auto e = parse_factor();
        while (eat('*')) {
            if (e.kind != DensityExpression::Kind::Product) {
                DensityExpression p;
                p.kind = DensityExpression::Kind::Product;
                p.children.push_back(std::move(e));
                e = std::move(p);
            }
            e.children.push_back(parse_factor());
        }
        return e;
    }

    DensityExpression parse_factor() {
        skip_ws();
        if (pos >= text.size()) fail("expected a factor");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            auto e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail("expected a factor");
    }

    DensityExpression parse_number() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                text[pos] == '/'))
            ++pos;
        DensityExpression e;
        e.kind = DensityExpression::Kind::Constant;
        try {
            e.constant = rat_from_string(text.substr(start, pos - start));
        } catch (const Error&) {
            pos = start;
            fail("malformed number");
        }
        return e;
    }

    DensityExpression parse_name() {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        DensityExpression e;
        e.kind = DensityExpression::Kind::Graph;
        if (name == "G" && pos < text.size() && text[pos] == '{') {
            e.graph = parse_literal();
            return e;
        }
        if (name.size() >= 2 && std::isdigit(static_cast<unsigned char>(name[1])) &&
            (name[0] == 'K' || name[0] == 'C' || name[0] == 'P' || name[0] == 'E')) {
            int n = 0;
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
                n = n * 10 + (name[i] - '0');
            }
            if (digits) {
                try {
                    switch (name[0]) {
                        case 'K': e.graph = complete_graph(n); return e;
                        case 'C': e.graph = cycle_graph(n); return e;
                        case 'P': e.graph = path_graph(n); return e;
                        case 'E': e.graph = empty_graph(n); return e;
                    }
                } catch (const Error&) {
                    pos = start;
                    fail("bad order in graph alias");
                }
            }
        }
        if (allow_names) {
            e.graph_name = name;
            return e;
        }
        pos = start;
        fail("unknown graph alias");
    }

    SimpleGraph parse_literal() {
        ++pos;  // '{'
        skip_ws();
        std::size_t nstart = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == nstart) fail("expected vertex count");
        int n = std::stoi(text.substr(nstart, pos - nstart));
        if (n < 1 || n > 10) fail("vertex count out of range");
        if (!eat(';')) fail("expected ';'");
        SimpleGraph g(n);
        while (!at('}')) {
            skip_ws();
            std::size_t estart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == estart || pos >= text.size() || text[pos] != '-') fail("expected edge i-j");
            int a = std::stoi(text.substr(estart, pos - estart));
            ++pos;
            std::size_t bstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == bstart) fail("expected edge i-j");
            int b = std::stoi(text.substr(bstart, pos - bstart));
            try {
                g.add_edge(a, b);
            } catch (const Error&) {
                pos = estart;
                fail("bad edge endpoints");
            }
        }
        ++pos;  // '}'
        return g;
    }
};

std::string render_graph_inline(const SimpleGraph& g) {
    std::string s = "G{" + std::to_string(g.n) + ";";
    bool first = true;
    for (const auto& [a, b] : g.edges) {
        if (!first) s += " ";
        s += std::to_string(a) + "-" + std::to_string(b);
        first = false;
    }
    return s + "}";
}

void render_expr(const DensityExpression& e, std::string& out, bool in_product) {
    switch (e.kind) {
        case DensityExpression::Kind::Constant: out += rat_to_string(e.constant); break;
        case DensityExpression::Kind::Graph:
            out += e.graph_name.empty() ? render_graph_inline(e.graph) : e.graph_name;
            break;
        case DensityExpression::Kind::Sum: {
            if (in_product) out += "(";
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += " + ";
                render_expr(e.children[i], out, false);
            }
            if (in_product) out += ")";
            break;
        }
        case DensityExpression::Kind::Product: {
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += " * ";
                render_expr(e.children[i], out, true);
            }
            break;
        }
    }
}

void collect_graph_names(const DensityExpression& e, std::vector<std::string>& out) {
    if (e.kind == DensityExpression::Kind::Graph && !e.graph_name.empty())
        out.push_back(e.graph_name);
    for (const auto& c : e.children) collect_graph_names(c, out);
}

// ---- ordinary evaluation ------------------------------------------------

struct EvalNum {
    double value = 0.0;
    double var = 0.0;
};

EvalNum eval_mc(const DensityExpression& e, std::map<std::string, DensityEstimate>& memo,
                const Graphon& g, std::uint64_t samples, std::uint64_t seed) {
    switch (e.kind) {
        case DensityExpression::Kind::Constant: return {to_double(e.constant), 0.0};
        case DensityExpression::Kind::Graph: {
            std::string key = render_graph(e.graph);
            auto it = memo.find(key);
            if (it == memo.end()) {
                // one stream per distinct graph keeps evaluation linear over sums
                auto est = induced_density_mc(e.graph, g, samples, seed ^ stream_id(key));
                it = memo.emplace(key, est).first;
            }
            return {it->second.value, it->second.stderr_ * it->second.stderr_};
        }
        case DensityExpression::Kind::Sum: {
            EvalNum r;
            for (const auto& c : e.children) {
                auto v = eval_mc(c, memo, g, samples, seed);
                r.value += v.value;
                r.var += v.var;
            }
            return r;
        }
        case DensityExpression::Kind::Product: {
            EvalNum r{1.0, 0.0};
            for (const auto& c : e.children) {
                auto v = eval_mc(c, memo, g, samples, seed);
                r.var = r.var * v.value * v.value + v.var * r.value * r.value;
                r.value *= v.value;
            }
            return r;
        }
    }
    return {};
}

Rational eval_exact(const DensityExpression& e, std::map<std::string, Rational>& memo,
                    const Graphon& g) {
    switch (e.kind) {
        case DensityExpression::Kind::Constant: return e.constant;
        case DensityExpression::Kind::Graph: {
            std::string key = render_graph(e.graph);
            auto it = memo.find(key);
            if (it == memo.end()) it = memo.emplace(key, induced_density_exact(e.graph, g)).first;
            return it->second;
        }
        case DensityExpression::Kind::Sum: {
            Rational r = 0;
            for (const auto& c : e.children) r += eval_exact(c, memo, g);
            return r;
        }
        case DensityExpression::Kind::Product: {
            Rational r = 1;
            for (const auto& c : e.children) r *= eval_exact(c, memo, g);
            return r;
        }
    }
    return 0;
}

}  // namespace

DensityExpression parse_expression(const std::string& text, bool allow_names) {
    ExprParser p{text, 0, allow_names};
    auto e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError("trailing input", p.pos + 1);
    return e;
}

std::string render_expression(const DensityExpression& e) {
    std::string out;
    render_expr(e, out, false);
    return out;
}

OrdinaryConstraint parse_constraint(const std::string& text) {
    ExprParser p{text, 0, false};
    OrdinaryConstraint c;
    c.lhs = p.parse_expr();
    if (!p.eat('=')) throw SyntaxError("expected '='", p.pos + 1);
    c.rhs = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError("trailing input", p.pos + 1);
    return c;
}

std::string satisfaction_name(Satisfaction s) {
    switch (s) {
        case Satisfaction::Satisfied: return "satisfied";
        case Satisfaction::Violated: return "violated";
        case Satisfaction::NullSatisfied: return "null-satisfied";
        case Satisfaction::Inconclusive: return "inconclusive";
    }
    return "?";
}

SatisfactionVerdict evaluate_ordinary(const OrdinaryConstraint& c, const Graphon& g,
                                      std::uint64_t samples, std::uint64_t seed) {
    SatisfactionVerdict v;
    if (g.exact() && g.block_count() > 0) {
        try {
            std::map<std::string, Rational> memo;
            v.lhs_exact = eval_exact(c.lhs, memo, g);
            v.rhs_exact = eval_exact(c.rhs, memo, g);
            v.is_exact = true;
            v.lhs_value = to_double(v.lhs_exact);
            v.rhs_value = to_double(v.rhs_exact);
            v.status = v.lhs_exact == v.rhs_exact ? Satisfaction::Satisfied : Satisfaction::Violated;
            return v;
        } catch (const BudgetExceeded&) {
        } catch (const PreconditionViolated&) {
        }
    }
    std::map<std::string, DensityEstimate> memo;
    auto l = eval_mc(c.lhs, memo, g, samples, seed);
    auto r = eval_mc(c.rhs, memo, g, samples, seed);
    v.lhs_value = l.value;
    v.lhs_stderr = std::sqrt(l.var);
    v.rhs_value = r.value;
    v.rhs_stderr = std::sqrt(r.var);
    double band = 4.0 * std::sqrt(l.var + r.var);
    v.status = std::abs(l.value - r.value) <= std::max(band, 1e-12) ? Satisfaction::Satisfied
                                                                    : Satisfaction::Violated;
    return v;
}

// ---- part tables ----------------------------------------------------------

PartTable PartTable::single() {
    PartTable t;
    t.parts.push_back({"ALL", Rational(1), 0.0, true, 0.0, 0.0, 0});
    return t;
}

PartTable PartTable::svejk() {
    PartTable t;
    const char* names = "ABCDEFG";
    for (int i = 0; i < 7; ++i)
        t.parts.push_back({std::string(1, names[i]), Rational(1, 13), (32.0 + i) / 104.0, false,
                           0.0, 0.0, 0});
    t.parts.push_back({"P", Rational(1, 13), 39.0 / 104.0, false, 0.0, 0.0, 0});
    t.parts.push_back({"Q", Rational(4, 13), 40.0 / 104.0, true, 0.0, 0.0, 0});
    t.parts.push_back({"R", Rational(1, 13), 28.0 / 104.0, false, 0.0, 0.0, 0});
    return t;
}

int PartTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].name == name) return int(i);
    return -1;
}

int PartTable::classify(const Graphon& g, double x) const {
    double deg = g.degree(x, 1e-6);
    int best = -1, bound = -1;
    double bestDist = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        if (p.degree_is_lower_bound) {
            if (deg >= p.degree - tol && bound < 0) bound = int(i);
        } else {
            double d = std::abs(deg - p.degree);
            if (d <= tol && (best < 0 || d < bestDist)) {
                best = int(i);
                bestDist = d;
            }
        }
    }
    return best >= 0 ? best : bound;
}

PartTable partition_by_degree(const Graphon& g, const PartTable& expected, double tol,
                              std::uint64_t grid) {
    if (tol <= 0 || grid == 0) throw OutOfRange("bad tolerance or grid");
    for (std::size_t i = 0; i < expected.parts.size(); ++i)
        for (std::size_t j = i + 1; j < expected.parts.size(); ++j) {
            if (expected.parts[i].degree_is_lower_bound || expected.parts[j].degree_is_lower_bound)
                continue;
            if (std::abs(expected.parts[i].degree - expected.parts[j].degree) <= 2 * tol)
                throw PreconditionViolated("expected degrees are not separated beyond 2*tol");
        }
    PartTable fit = expected;
    fit.tol = tol;
    for (auto& p : fit.parts) {
        p.fitted_count = 0;
        p.fitted_degree = 0.0;
        p.fitted_measure = 0.0;
    }
    for (std::uint64_t i = 0; i < grid; ++i) {
        double x = (double(i) + 0.5) / double(grid);
        int idx = fit.classify(g, x);
        if (idx < 0)
            throw DegreeUnassignable("degree " + std::to_string(g.degree(x, 1e-6)) + " at x=" +
                                     std::to_string(x) + " matches no expected part");
        fit.parts[idx].fitted_count += 1;
        fit.parts[idx].fitted_degree += g.degree(x, 1e-6);
    }
    for (auto& p : fit.parts) {
        p.fitted_measure = double(p.fitted_count) / double(grid);
        if (p.fitted_count > 0) p.fitted_degree /= double(p.fitted_count);
        double a = to_double(p.measure);
        double slack = 0.02 * a + 4.0 * std::sqrt(a * (1 - a) / double(grid));
        if (std::abs(p.fitted_measure - a) > slack)
            throw MeasureMismatch("part " + p.name + " has measure " +
                                  std::to_string(p.fitted_measure) + ", expected " +
                                  std::to_string(a));
    }
    return fit;
}

// ---- decorated graphs -------------------------------------------------------

int DecoratedGraph::index_of(const std::string& vertex) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].name == vertex) return int(i);
    return -1;
}

int DecoratedGraph::root_count() const {
    int c = 0;
    for (const auto& v : vertices)
        if (v.root_order > 0) ++c;
    return c;
}

std::vector<int> DecoratedGraph::roots_in_order() const {
    std::vector<int> r(root_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].root_order > 0) r[vertices[i].root_order - 1] = int(i);
    return r;
}

std::vector<int> DecoratedGraph::nonroots() const {
    std::vector<int> r;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].root_order == 0) r.push_back(int(i));
    return r;
}

std::vector<std::pair<int, int>> DecoratedGraph::unspecified_pairs() const {
    std::vector<std::pair<int, int>> r;
    for (int i = 0; i < int(vertices.size()); ++i)
        for (int j = i + 1; j < int(vertices.size()); ++j)
            if (!pairs.count({i, j})) r.push_back({i, j});
    return r;
}

std::vector<DecoratedGraph> expand_unspecified(const DecoratedGraph& h) {
    auto open = h.unspecified_pairs();
    if (open.empty()) return {h};
    DecoratedGraph off = h, on = h;
    off.pairs[open[0]] = false;
    on.pairs[open[0]] = true;
    return {off, on};
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

void add_pairs(DecoratedGraph& g, const std::vector<std::string>& toks, bool edge,
               std::size_t line_no) {
    for (std::size_t i = 1; i < toks.size(); ++i) {
        auto dash = toks[i].find('-');
        if (dash == std::string::npos) throw SyntaxError("expected a-b pair", line_no);
        int a = g.index_of(toks[i].substr(0, dash));
        int b = g.index_of(toks[i].substr(dash + 1));
        if (a < 0 || b < 0) throw SyntaxError("unknown vertex in pair", line_no);
        if (a == b) throw SyntaxError("loops are not allowed", line_no);
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        if (g.pairs.count(key)) throw SyntaxError("pair specified twice", line_no);
        g.pairs[key] = edge;
    }
}

}  // namespace

DecoratedConstraint parse_decorated(const std::string& text) {
    DecoratedConstraint c;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    DecoratedGraph* current = nullptr;
    bool have_constraint = false;
    int next_root = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "parts:") {
            for (std::size_t i = 1; i < toks.size(); ++i) c.part_names.push_back(toks[i]);
        } else if (toks[0] == "graph") {
            if (toks.size() != 2) throw SyntaxError("expected: graph NAME", line_no);
            if (current) throw SyntaxError("previous graph not closed with 'end'", line_no);
            c.graphs.push_back({});
            current = &c.graphs.back();
            current->name = toks[1];
            next_root = 1;
        } else if (toks[0] == "end") {
            if (!current) throw SyntaxError("'end' without open graph", line_no);
            current = nullptr;
        } else if (toks[0] == "root" || toks[0] == "vertex") {
            if (!current) throw SyntaxError("vertex outside a graph block", line_no);
            if (toks.size() != 3) throw SyntaxError("expected: root|vertex NAME PART", line_no);
            if (current->index_of(toks[1]) >= 0)
                throw SyntaxError("duplicate vertex name", line_no);
            if (std::find(c.part_names.begin(), c.part_names.end(), toks[2]) ==
                c.part_names.end())
                throw SyntaxError("undeclared part '" + toks[2] + "'", line_no);
            current->vertices.push_back(
                {toks[1], toks[0] == "root" ? next_root++ : 0, toks[2]});
        } else if (toks[0] == "edge" || toks[0] == "nonedge") {
            if (!current) throw SyntaxError("pairs outside a graph block", line_no);
            add_pairs(*current, toks, toks[0] == "edge", line_no);
        } else if (toks[0] == "constraint:") {
            if (current) throw SyntaxError("graph not closed with 'end'", line_no);
            std::string rest = line.substr(line.find("constraint:") + 11);
            auto eq = rest.find('=');
            if (eq == std::string::npos) throw SyntaxError("expected '='", line_no);
            try {
                c.lhs = parse_expression(rest.substr(0, eq), true);
                c.rhs = parse_expression(rest.substr(eq + 1), true);
            } catch (const SyntaxError&) {
                throw SyntaxError("bad constraint expression", line_no);
            }
            have_constraint = true;
        } else {
            throw SyntaxError("unrecognized directive '" + toks[0] + "'", line_no);
        }
    }
    if (current) throw SyntaxError("graph not closed with 'end'", line_no);
    if (!have_constraint) throw SyntaxError("missing 'constraint:' line", line_no);
    std::vector<std::string> refs;
    collect_graph_names(c.lhs, refs);
    collect_graph_names(c.rhs, refs);
    for (const auto& r : refs) {
        bool found = false;
        for (const auto& g : c.graphs) found = found || g.name == r;
        if (!found) throw SyntaxError("constraint references unknown graph '" + r + "'", line_no);
    }
    return c;
}

std::string render_constraint(const DecoratedConstraint& c) {
    std::string out = "parts:";
    for (const auto& p : c.part_names) out += " " + p;
    out += "\n";
    for (const auto& g : c.graphs) {
        out += "graph " + g.name + "\n";
        for (int r : g.roots_in_order())
            out += "  root " + g.vertices[r].name + " " + g.vertices[r].part + "\n";
        for (int v : g.nonroots())
            out += "  vertex " + g.vertices[v].name + " " + g.vertices[v].part + "\n";
        std::string edges, nonedges;
        for (const auto& [key, is_edge] : g.pairs) {
            std::string pair =
                " " + g.vertices[key.first].name + "-" + g.vertices[key.second].name;
            (is_edge ? edges : nonedges) += pair;
        }
        if (!edges.empty()) out += "  edge" + edges + "\n";
        if (!nonedges.empty()) out += "  nonedge" + nonedges + "\n";
        out += "end\n";
    }
    out += "constraint: " + render_expression(c.lhs) + " = " + render_expression(c.rhs) + "\n";
    return out;
}

// ---- decorated evaluation -----------------------------------------------

namespace {

const DecoratedGraph& graph_by_name(const DecoratedConstraint& c, const std::string& name) {
    for (const auto& g : c.graphs)
        if (g.name == name) return g;
    throw IncompatibleGraphs("unknown decorated graph '" + name + "'");
}

double eval_with_values(const DensityExpression& e, const std::map<std::string, double>& values) {
    switch (e.kind) {
        case DensityExpression::Kind::Constant: return to_double(e.constant);
        case DensityExpression::Kind::Graph: return values.at(e.graph_name);
        case DensityExpression::Kind::Sum: {
            double s = 0;
            for (const auto& ch : e.children) s += eval_with_values(ch, values);
            return s;
        }
        case DensityExpression::Kind::Product: {
            double p = 1;
            for (const auto& ch : e.children) p *= eval_with_values(ch, values);
            return p;
        }
    }
    return 0;
}

}  // namespace

SatisfactionVerdict evaluate_decorated(const DecoratedConstraint& c, const Graphon& g,
                                       const PartTable& parts, std::uint64_t rootSamples,
                                       std::uint64_t nonrootSamples, std::uint64_t seed) {
    if (rootSamples == 0 || nonrootSamples == 0) throw OutOfRange("need positive sample counts");
    std::vector<std::string> refs;
    collect_graph_names(c.lhs, refs);
    collect_graph_names(c.rhs, refs);
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    if (refs.empty()) throw IncompatibleGraphs("no decorated graphs in the constraint");

    std::vector<const DecoratedGraph*> gs;
    for (const auto& r : refs) gs.push_back(&graph_by_name(c, r));

    // compatibility: identical root labels (in root order) and root adjacency
    const auto& H0owner = *gs[0];
    auto roots0 = H0owner.roots_in_order();
    const int n = int(roots0.size());
    for (const auto* hp : gs) {
        auto roots = hp->roots_in_order();
        if (int(roots.size()) != n) throw IncompatibleGraphs("root counts differ");
        for (int i = 0; i < n; ++i)
            if (hp->vertices[roots[i]].part != H0owner.vertices[roots0[i]].part)
                throw IncompatibleGraphs("root labels differ");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto key = std::make_pair(std::min(roots[i], roots[j]),
                                          std::max(roots[i], roots[j]));
                auto key0 = std::make_pair(std::min(roots0[i], roots0[j]),
                                           std::max(roots0[i], roots0[j]));
                auto it = hp->pairs.find(key);
                auto it0 = H0owner.pairs.find(key0);
                if (it == hp->pairs.end() || it0 == H0owner.pairs.end())
                    throw IncompatibleGraphs("root adjacency must be fully specified");
                if (it->second != it0->second)
                    throw IncompatibleGraphs("root subgraphs differ");
            }
    }
    for (const auto* hp : gs)
        for (const auto& v : hp->vertices)
            if (parts.index_of(v.part) < 0)
                throw IncompatibleGraphs("part '" + v.part + "' is not in the table");

    auto sample_part = [&](int partIdx, std::mt19937_64& gen) {
        for (int tries = 0; tries < 1000000; ++tries) {
            double x = uniform01(gen);
            if (parts.classify(g, x) == partIdx) return x;
        }
        throw DegreeUnassignable("part '" + parts.parts[partIdx].name +
                                 "' was never hit while sampling");
    };

    // per-graph pair lists split into root-root (conditioned away) and the rest
    struct GraphPlan {
        std::vector<int> roots;                          // vertex -> root slot
        std::vector<int> nonroots;                       // sampled vertices
        std::vector<int> nonrootParts;                   // part index per nonroot
        std::vector<std::pair<std::pair<int, int>, bool>> free_pairs;  // >=1 nonroot
    };
    std::vector<GraphPlan> plans;
    for (const auto* hp : gs) {
        GraphPlan plan;
        plan.roots.assign(hp->vertices.size(), -1);
        auto roots = hp->roots_in_order();
        for (int i = 0; i < n; ++i) plan.roots[roots[i]] = i;
        for (int v : hp->nonroots()) {
            plan.nonroots.push_back(v);
            plan.nonrootParts.push_back(parts.index_of(hp->vertices[v].part));
        }
        for (const auto& [key, is_edge] : hp->pairs)
            if (plan.roots[key.first] < 0 || plan.roots[key.second] < 0)
                plan.free_pairs.push_back({key, is_edge});
        plans.push_back(std::move(plan));
    }
    std::vector<int> rootParts(n);
    for (int i = 0; i < n; ++i) rootParts[i] = parts.index_of(H0owner.vertices[roots0[i]].part);

    SatisfactionVerdict v;
    v.tuples = rootSamples;
    double sumL = 0, sumL2 = 0, sumR = 0, sumR2 = 0, sumD = 0, sumD2 = 0;
    std::vector<double> x(n);
    const std::uint64_t kChunk = 8192;
    auto gen = substream(seed, "dec-root", 0);
    auto gen2 = substream(seed, "dec-nonroot", 0);
    for (std::uint64_t t = 0; t < rootSamples; ++t) {
        if (t % kChunk == 0 && t > 0) {
            gen = substream(seed, "dec-root", t / kChunk);
            gen2 = substream(seed, "dec-nonroot", t / kChunk);
        }
        for (int i = 0; i < n; ++i) x[i] = sample_part(rootParts[i], gen);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) {
                auto key = std::make_pair(std::min(roots0[i], roots0[j]),
                                          std::max(roots0[i], roots0[j]));
                double w = g.value_sample(x[i], x[j]);
                ok = H0owner.pairs.at(key) ? w > 0.0 : w < 1.0;
            }
        if (!ok) continue;
        v.accepted += 1;

        std::map<std::string, double> values;
        for (std::size_t k = 0; k < gs.size(); ++k) {
            const auto& hp = *gs[k];
            const auto& plan = plans[k];
            std::vector<double> pos(hp.vertices.size(), 0.0);
            for (std::size_t vi = 0; vi < hp.vertices.size(); ++vi)
                if (plan.roots[vi] >= 0) pos[vi] = x[plan.roots[vi]];
            double acc = 0;
            for (std::uint64_t s = 0; s < nonrootSamples; ++s) {
                for (std::size_t q = 0; q < plan.nonroots.size(); ++q)
                    pos[plan.nonroots[q]] = sample_part(plan.nonrootParts[q], gen2);
                double prod = 1;
                for (const auto& [key, is_edge] : plan.free_pairs) {
                    double w = g.value_sample(pos[key.first], pos[key.second]);
                    prod *= is_edge ? w : 1.0 - w;
                }
                acc += prod;
            }
            values[hp.name] = acc / double(nonrootSamples);
        }
        double L = eval_with_values(c.lhs, values);
        double R = eval_with_values(c.rhs, values);
        sumL += L;
        sumL2 += L * L;
        sumR += R;
        sumR2 += R * R;
        sumD += L - R;
        sumD2 += (L - R) * (L - R);
    }

    v.acceptance = double(v.accepted) / double(rootSamples);
    if (v.accepted == 0) {
        // one-sided 99% upper confidence bound with zero acceptances
        double upper = 1.0 - std::pow(0.01, 1.0 / double(rootSamples));
        v.status = upper < 1e-6 ? Satisfaction::NullSatisfied : Satisfaction::Inconclusive;
        return v;
    }
    double na = double(v.accepted);
    v.lhs_value = sumL / na;
    v.rhs_value = sumR / na;
    double dMean = sumD / na;
    if (v.accepted < 2) {
        v.status = Satisfaction::Inconclusive;
        return v;
    }
    auto sd = [&](double sum, double sum2) {
        double var = std::max(0.0, (sum2 - sum * sum / na) / (na - 1));
        return std::sqrt(var / na);
    };
    v.lhs_stderr = sd(sumL, sumL2);
    v.rhs_stderr = sd(sumR, sumR2);
    double dErr = sd(sumD, sumD2);
    v.status = std::abs(dMean) <= std::max(4.0 * dErr, 1e-12) ? Satisfaction::Satisfied
                                                              : Satisfaction::Violated;
    return v;
}

}  // namespace graphonlab
