#include "graphonlab/io.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "graphonlab/cf.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/svejk.hpp"

namespace graphonlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

GraphonPtr parse_graphon(const std::string& descriptor, int tower_cap, int tail_k) {
    auto colon = descriptor.find(':');
    std::string kind = descriptor.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    if (kind == "constant") return make_constant(rat_from_string(arg));
    if (kind == "cf") return make_cf(std::stoi(arg));
    if (kind == "svejk") return make_svejk(tower_cap, tail_k);
    if (kind == "half") return make_half();
    if (kind == "step") {
        auto semi = arg.find(';');
        if (semi == std::string::npos)
            throw SyntaxError("step descriptor needs '<breaks>;<rows>'", 1);
        std::vector<Rational> breaks;
        for (const auto& t : split(arg.substr(0, semi), ',')) breaks.push_back(rat_from_string(t));
        std::vector<std::vector<Rational>> rows;
        for (const auto& row : split(arg.substr(semi + 1), '|')) {
            rows.push_back({});
            for (const auto& t : split(row, ',')) rows.back().push_back(rat_from_string(t));
        }
        return make_step(std::move(breaks), std::move(rows));
    }
    throw SyntaxError("unknown graphon descriptor '" + descriptor + "'", 1);
}

PartitionSpec parse_partition(const std::string& text) {
    PartitionSpec p;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "grid") {
            if (!(ls >> p.grid)) throw SyntaxError("grid needs a block count", line_no);
        } else if (tok == "coordinate-signs") {
            int m = 0, c = 0;
            if (!(ls >> m >> c)) throw SyntaxError("coordinate-signs needs m and c", line_no);
            return PartitionSpec::coordinate_signs(m, c);
        } else if (tok == "part") {
            std::string form;
            if (!(ls >> form)) throw SyntaxError("part needs a form", line_no);
            if (form == "intervals") {
                std::vector<std::pair<Rational, Rational>> iv;
                std::string span;
                while (ls >> span) {
                    auto sep = span.find(':');
                    if (sep == std::string::npos)
                        throw SyntaxError("interval must be a:b", line_no);
                    iv.push_back({rat_from_string(span.substr(0, sep)),
                                  rat_from_string(span.substr(sep + 1))});
                }
                if (iv.empty()) throw SyntaxError("empty interval part", line_no);
                p.parts.push_back(SetSpec::intervals(std::move(iv)));
            } else if (form == "blocks") {
                if (p.grid == 0) throw SyntaxError("block parts need a grid line first", line_no);
                std::vector<std::uint64_t> blocks;
                std::uint64_t b;
                while (ls >> b) blocks.push_back(b);
                if (blocks.empty()) throw SyntaxError("empty block part", line_no);
                p.parts.push_back(SetSpec::full_blocks(p.grid, blocks));
            } else {
                throw SyntaxError("unknown part form '" + form + "'", line_no);
            }
        } else {
            throw SyntaxError("unknown directive '" + tok + "'", line_no);
        }
    }
    if (p.parts.empty()) throw SyntaxError("partition file declares no parts", line_no);
    return p;
}

std::string render_partition(const PartitionSpec& p) {
    std::string out;
    if (p.grid > 0) out += "grid " + std::to_string(p.grid) + "\n";
    for (const auto& part : p.parts) {
        if (part.is_blocks()) {
            // only crisp unions render as blocks; fall back to intervals
            bool crisp = true;
            Rational unit(1, BigInt(part.grid()));
            for (const auto& w : part.weights()) crisp = crisp && (w == 0 || w == unit);
            if (crisp) {
                out += "part blocks";
                for (std::uint64_t b = 0; b < part.grid(); ++b)
                    if (part.weights()[b] != 0) out += " " + std::to_string(b);
                out += "\n";
                continue;
            }
        }
        out += "part intervals";
        auto iv = part.is_blocks() ? part.to_intervals() : part.interval_list();
        for (const auto& [a, b] : iv) out += " " + rat_to_string(a) + ":" + rat_to_string(b);
        out += "\n";
    }
    return out;
}

PartTable parse_part_table(const std::string& text) {
    PartTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok, name, measure, degree;
        if (!(ls >> tok)) continue;
        if (tok != "part" || !(ls >> name >> measure >> degree))
            throw SyntaxError("expected: part NAME MEASURE DEGREE", line_no);
        PartInfo p;
        p.name = name;
        p.measure = rat_from_string(measure);
        p.degree_is_lower_bound = degree.rfind(">=", 0) == 0;
        p.degree = to_double(rat_from_string(
            p.degree_is_lower_bound ? degree.substr(2) : degree));
        t.parts.push_back(std::move(p));
    }
    if (t.parts.empty()) throw SyntaxError("part table declares no parts", line_no);
    return t;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

std::string format_number(bool is_exact, const Rational& exact, double value, bool decimal) {
    if (is_exact && !decimal) return rat_to_string(exact);
    return format_double(is_exact ? to_double(exact) : value);
}

}  // namespace graphonlab
