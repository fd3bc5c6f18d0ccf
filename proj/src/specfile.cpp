#include "starprod/specfile.hpp"

#include "starprod/parse.hpp"

#include <fstream>
#include <sstream>

namespace starprod {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Splits "head rest" at the first whitespace run.
std::pair<std::string, std::string> split_head(const std::string& s) {
    size_t sp = s.find_first_of(" \t");
    if (sp == std::string::npos) return {s, ""};
    return {s.substr(0, sp), trim(s.substr(sp + 1))};
}

std::pair<std::string, std::string> split_equals(int lineno, const std::string& s) {
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw SpecError(lineno, "expected '=' in '" + s + "'");
    return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

} // namespace

AlgebraSpec parse_algebra_spec(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::string name;
    int dim = -1;
    VarSpacePtr xspace;
    std::shared_ptr<LieAlgebra> algebra;
    std::map<std::pair<int, int>, int> seen_brackets; // pair -> line
    std::vector<std::string> chart_names;
    std::vector<RationalFunction> chart_forward;
    VarSpacePtr cspace; // frozen at first inverse line
    std::vector<std::optional<RationalFunction>> inverse;
    std::optional<Polynomial> region;

    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto [head, rest] = split_head(line);

        if (head == "name") {
            if (!name.empty()) throw SpecError(lineno, "duplicate name directive");
            if (rest.empty()) throw SpecError(lineno, "name directive needs a value");
            name = rest;
        } else if (head == "dim") {
            if (dim > 0) throw SpecError(lineno, "duplicate dim directive");
            try {
                dim = std::stoi(rest);
            } catch (const std::exception&) {
                throw SpecError(lineno, "dim needs an integer, got '" + rest + "'");
            }
            if (dim <= 0) throw SpecError(lineno, "dim must be positive");
            xspace = numbered_space(dim);
            algebra = std::make_shared<LieAlgebra>(name.empty() ? "unnamed" : name, xspace);
        } else if (head == "bracket") {
            if (!algebra) throw SpecError(lineno, "bracket before dim");
            auto [lhs, rhs] = split_equals(lineno, rest);
            int i, j;
            char lb, comma, rb;
            std::istringstream ls(lhs);
            if (!(ls >> lb >> i >> comma >> j >> rb) || lb != '[' || comma != ',' || rb != ']')
                throw SpecError(lineno, "bracket left side must look like [i,j], got '" + lhs + "'");
            if (i < 1 || i > dim || j < 1 || j > dim || i == j)
                throw SpecError(lineno, "bracket indices out of range in '" + lhs + "'");
            const auto key = std::minmax(i, j);
            if (auto it = seen_brackets.find(key); it != seen_brackets.end())
                throw SpecError(lineno, "bracket [" + std::to_string(i) + "," + std::to_string(j) +
                                            "] already set on line " + std::to_string(it->second));
            seen_brackets.emplace(key, lineno);
            Polynomial value(xspace);
            try {
                value = parse_polynomial(rhs, xspace);
            } catch (const ParseError& e) {
                throw SpecError(lineno, std::string("bracket value: ") + e.what());
            }
            if (!value.is_zero() && (value.degree() != 1 || !value.is_homogeneous()))
                throw SpecError(lineno, "bracket value must be a linear combination of coordinates");
            std::vector<Rat> coeffs(static_cast<size_t>(dim), Rat(0));
            for (int k = 0; k < dim; ++k) {
                Expvec e(static_cast<size_t>(dim), 0);
                e[static_cast<size_t>(k)] = 1;
                coeffs[static_cast<size_t>(k)] = value.coefficient(e);
            }
            algebra->set_bracket(i - 1, j - 1, std::move(coeffs));
        } else if (head == "invariant") {
            if (!algebra) throw SpecError(lineno, "invariant before dim");
            try {
                algebra->add_invariant(parse_polynomial(rest, xspace));
            } catch (const ParseError& e) {
                throw SpecError(lineno, std::string("invariant value: ") + e.what());
            }
        } else if (head == "chart") {
            if (!algebra) throw SpecError(lineno, "chart before dim");
            if (cspace) throw SpecError(lineno, "chart line after inverse lines");
            auto [lhs, rhs] = split_equals(lineno, rest);
            for (const auto& existing : chart_names)
                if (existing == lhs) throw SpecError(lineno, "duplicate chart variable '" + lhs + "'");
            try {
                chart_forward.push_back(parse_expression(rhs, xspace));
            } catch (const ParseError& e) {
                throw SpecError(lineno, std::string("chart value: ") + e.what());
            }
            chart_names.push_back(lhs);
        } else if (head == "inverse") {
            if (!algebra) throw SpecError(lineno, "inverse before dim");
            if (chart_names.empty()) throw SpecError(lineno, "inverse before any chart line");
            if (!cspace) {
                cspace = VarSpace::make(chart_names);
                inverse.assign(static_cast<size_t>(dim), std::nullopt);
            }
            auto [lhs, rhs] = split_equals(lineno, rest);
            const auto xi = xspace->index(lhs);
            if (!xi) throw SpecError(lineno, "inverse left side '" + lhs + "' is not a coordinate");
            if (inverse[static_cast<size_t>(*xi)])
                throw SpecError(lineno, "duplicate inverse for " + lhs);
            try {
                inverse[static_cast<size_t>(*xi)] = parse_expression(rhs, cspace);
            } catch (const ParseError& e) {
                throw SpecError(lineno, std::string("inverse value: ") + e.what());
            }
        } else if (head == "region") {
            if (!algebra) throw SpecError(lineno, "region before dim");
            if (region) throw SpecError(lineno, "duplicate region directive");
            try {
                region = parse_polynomial(rest, xspace);
            } catch (const ParseError& e) {
                throw SpecError(lineno, std::string("region value: ") + e.what());
            }
            if (region->is_zero()) throw SpecError(lineno, "region polynomial must be nonzero");
        } else {
            throw SpecError(lineno, "unknown directive '" + head + "'");
        }
    }

    if (name.empty()) throw SpecError(lineno, "missing name directive");
    if (!algebra) throw SpecError(lineno, "missing dim directive");

    AlgebraSpec out;
    out.algebra = std::move(algebra);
    if (!chart_names.empty()) {
        if (!cspace) throw SpecError(lineno, "chart lines present but no inverse lines");
        std::vector<RationalFunction> inv;
        for (int i = 0; i < dim; ++i) {
            if (!inverse[static_cast<size_t>(i)])
                throw SpecError(lineno, "missing inverse for " + xspace->name(i));
            inv.push_back(*inverse[static_cast<size_t>(i)]);
        }
        out.chart = make_chart(xspace, cspace, std::move(chart_forward), std::move(inv));
    }
    out.region = std::move(region);
    return out;
}

AlgebraSpec load_algebra_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_spec(buf.str());
}

std::string print_algebra_spec(const AlgebraSpec& spec) {
    if (!spec.algebra) throw std::invalid_argument("print_algebra_spec: empty description");
    const LieAlgebra& L = *spec.algebra;
    std::ostringstream out;
    out << "name " << L.name() << "\n";
    out << "dim " << L.dim() << "\n";
    for (int i = 1; i < L.dim(); ++i) {
        for (int j = 0; j < i; ++j) {
            Polynomial b = L.bracket(i, j);
            if (!b.is_zero())
                out << "bracket [" << (i + 1) << "," << (j + 1) << "] = " << b.str() << "\n";
        }
    }
    for (const auto& inv : L.invariants()) out << "invariant " << inv.str() << "\n";
    if (spec.chart) {
        const Chart& ch = *spec.chart;
        for (int c = 0; c < ch.cspace->dim(); ++c)
            out << "chart " << ch.cspace->name(c) << " = "
                << ch.forward[static_cast<size_t>(c)].str() << "\n";
        for (int x = 0; x < ch.xspace->dim(); ++x)
            out << "inverse " << ch.xspace->name(x) << " = "
                << ch.inverse[static_cast<size_t>(x)].str() << "\n";
    }
    if (spec.region) out << "region " << spec.region->str() << "\n";
    return out.str();
}

} // namespace starprod
