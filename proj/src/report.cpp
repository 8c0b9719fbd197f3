#include "hkr/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hkr {
namespace rep {

std::string dec(const Int& n) { return n.get_str(); }
std::string dec(long n) { return std::to_string(n); }

Json group_json(const cx::HomologyGroup& g) {
    Json j;
    j["free_rank"] = dec(g.free_rank);
    std::vector<std::pair<Int, int>> pps;
    for (Int f : g.torsion) {
        for (Int p = 2; f > 1; p = p + 1) {
            int k = 0;
            while (f % p == 0) {
                f = f / p;
                ++k;
            }
            if (k > 0) pps.emplace_back(p, k);
        }
    }
    std::sort(pps.begin(), pps.end());
    Json tor = Json::array();
    for (const auto& [p, k] : pps) tor.push_back(dec(p) + "^" + dec(static_cast<long>(k)));
    j["torsion"] = tor;
    return j;
}

Json verdict_json(const std::string& name, const std::string& verdict,
                  const std::string& diagnostics) {
    if (verdict != "pass" && verdict != "fail" && verdict != "not-verified")
        throw MathError("unknown verdict kind " + verdict);
    if (verdict != "pass" && diagnostics.empty())
        throw MathError("non-pass verdict requires diagnostics");
    Json j;
    j["name"] = name;
    j["verdict"] = verdict;
    j["diagnostics"] = diagnostics;
    return j;
}

Json make_report(const std::string& subcommand, const Json& config, const Json& tables,
                 const Json& verdicts) {
    Json j;
    j["tool"] = "hkrlab";
    j["version"] = "1.0";
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["tables"] = tables;
    j["verdicts"] = verdicts;
    return j;
}

std::string emit(const Json& j) { return j.dump(2) + "\n"; }

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw MathError(std::string("algebra grammar: expected '") + c + "'");
    }
    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    std::string ident() {
        skip_ws();
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (start == i) throw MathError("algebra grammar: identifier expected");
        return s.substr(start, i - start);
    }
    long number() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw MathError("algebra grammar: number expected");
        return std::stol(s.substr(start, i - start));
    }
};

BaseRing parse_base(Cursor& c) {
    std::string b = c.ident();
    if (b == "Q") return BaseRing::rationals();
    if (b == "Z") {
        if (c.peek('(')) {
            c.expect('(');
            long p = c.number();
            c.expect(')');
            return BaseRing::p_local(Int(p));
        }
        return BaseRing::integers();
    }
    if (b.size() > 1 && b[0] == 'F') {
        long p = std::stol(b.substr(1));
        return BaseRing::prime_field(Int(p));
    }
    throw MathError("algebra grammar: unknown base ring " + b);
}

MultiPoly parse_relation(Cursor& c, const std::vector<std::string>& vars, BaseRing ring) {
    MultiPoly out(vars, ring);
    bool first = true;
    while (true) {
        c.skip_ws();
        long sign = 1;
        if (c.eat('-'))
            sign = -1;
        else if (!c.eat('+') && !first)
            break;
        c.skip_ws();
        Rat coeff(sign);
        bool saw_factor = false;
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            coeff = Rat(sign) * Rat(c.number());
            saw_factor = true;
        }
        Exponents e(vars.size(), 0);
        while (true) {
            c.skip_ws();
            if (saw_factor && !c.eat('*')) {
                if (!(c.i < c.s.size() &&
                      std::isalpha(static_cast<unsigned char>(c.s[c.i]))))
                    break;
            }
            if (!(c.i < c.s.size() && std::isalpha(static_cast<unsigned char>(c.s[c.i]))))
                break;
            std::string v = c.ident();
            auto it = std::find(vars.begin(), vars.end(), v);
            if (it == vars.end())
                throw MathError("algebra grammar: unknown variable " + v);
            long exp = 1;
            if (c.eat('^')) exp = c.number();
            e[static_cast<size_t>(it - vars.begin())] += static_cast<int>(exp);
            saw_factor = true;
        }
        if (!saw_factor) throw MathError("algebra grammar: empty term");
        out.add_term(e, ring.reduce(coeff));
        first = false;
    }
    return out;
}

}  // namespace

hh::FPGradedAlgebra parse_algebra(const std::string& text) {
    Cursor c{text};
    BaseRing ring = parse_base(c);
    std::vector<std::string> vars;
    std::vector<long> weights;
    c.expect('[');
    while (true) {
        vars.push_back(c.ident());
        long w = 1;
        if (c.eat('(')) {
            w = c.number();
            c.expect(')');
        }
        weights.push_back(w);
        if (!c.eat(',')) break;
    }
    c.expect(']');
    std::vector<MultiPoly> rels;
    if (c.eat('/')) {
        c.expect('(');
        while (true) {
            rels.push_back(parse_relation(c, vars, ring));
            if (!c.eat(',')) break;
        }
        c.expect(')');
    }
    c.skip_ws();
    if (c.i != c.s.size()) throw MathError("algebra grammar: trailing input");
    return hh::FPGradedAlgebra(ring, vars, weights, rels);
}

Json hh_table(const hh::FPGradedAlgebra& A, long dmax, int window, long max_dim) {
    Json rows = Json::array();
    for (long d = 0; d <= dmax; ++d) {
        auto groups = hh::hochschild_homology(A, d, window, max_dim);
        for (const auto& [n, g] : groups) {
            Json row;
            row["n"] = dec(static_cast<long>(n));
            row["internal_degree"] = dec(d);
            row["group"] = group_json(g);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string hh_csv(const hh::FPGradedAlgebra& A, long dmax, int window, long max_dim) {
    std::ostringstream out;
    out << "n,internal_degree,free_rank,torsion\n";
    for (long d = 0; d <= dmax; ++d) {
        auto groups = hh::hochschild_homology(A, d, window, max_dim);
        for (const auto& [n, g] : groups) {
            out << n << "," << d << "," << g.free_rank << ",";
            Json t = group_json(g)["torsion"];
            for (size_t i = 0; i < t.size(); ++i)
                out << (i ? " " : "") << t[i].get<std::string>();
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace rep
}  // namespace hkr
