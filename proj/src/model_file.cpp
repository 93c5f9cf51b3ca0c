#include "mflocus/model_file.hpp"

#include <fstream>
#include <sstream>

namespace mflocus {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(trim(current));
    return out;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + msg, line);
}

struct RawSection {
    std::string name;
    std::size_t line;
    std::vector<std::tuple<std::string, std::string, std::size_t>> entries; // key, value, line
};

std::vector<RawSection> read_sections(const std::string& text, const std::string& path) {
    std::vector<RawSection> sections;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(path, lineno, "unterminated section header");
            sections.push_back(RawSection{trim(line.substr(1, line.size() - 2)), lineno, {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(path, lineno, "expected 'key = value'");
        if (sections.empty())
            fail(path, lineno, "entry outside any section");
        sections.back().entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                                             lineno);
    }
    return sections;
}

} // namespace

PolyMatrix parse_matrix(const std::string& text, const VarsPtr& vars) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("matrix must be bracketed: " + text, 0);
    std::string inner = trim(t.substr(1, t.size() - 2));
    std::vector<std::vector<Polynomial>> rows;
    std::size_t pos = 0;
    while (pos < inner.size()) {
        if (inner[pos] == ',' || std::isspace(static_cast<unsigned char>(inner[pos]))) {
            ++pos;
            continue;
        }
        if (inner[pos] != '[')
            throw ParseError("expected '[' starting a matrix row", pos);
        std::size_t close = inner.find(']', pos);
        if (close == std::string::npos)
            throw ParseError("unterminated matrix row", pos);
        std::string row = inner.substr(pos + 1, close - pos - 1);
        std::vector<Polynomial> cells;
        if (!trim(row).empty())
            for (const auto& cell : split(row, ','))
                cells.push_back(parse_poly(cell, vars));
        rows.push_back(std::move(cells));
        pos = close + 1;
    }
    if (rows.empty())
        return PolyMatrix(vars, 0, 0);
    return PolyMatrix::from_rows(vars, std::move(rows));
}

PrimeLocus parse_point_spec(const ModelPtr& model, const std::string& spec) {
    std::vector<Rational> coords;
    for (const auto& piece : split(spec, ','))
        coords.push_back(rational_from_string(piece));
    return PrimeLocus::rational_point(model, std::move(coords));
}

PrimeLocus parse_prime_spec(const ModelPtr& model, const std::string& spec) {
    std::vector<Polynomial> gens;
    for (const auto& piece : split(spec, ','))
        gens.push_back(parse_poly(piece, model->vars()));
    return PrimeLocus::prime_ideal(model, Ideal::make(model->vars(), std::move(gens)));
}

const MatrixFactorization& ModelFile::factorization(const std::string& name) const {
    auto it = factorizations.find(name);
    if (it == factorizations.end())
        throw PreconditionError("no factorization named '" + name + "' in " + path);
    return it->second;
}

ModelFile parse_model_file(const std::string& text, const std::string& path) {
    auto sections = read_sections(text, path);

    VarsPtr vars;
    std::vector<Polynomial> relations;
    std::optional<Polynomial> potential;
    for (const auto& sec : sections) {
        if (sec.name == "ring") {
            for (const auto& [key, value, line] : sec.entries) {
                if (key == "vars") {
                    std::vector<std::string> names = split(value, ',');
                    for (const auto& n : names)
                        if (n.empty())
                            fail(path, line, "empty variable name");
                    vars = make_vars(std::move(names));
                } else if (key == "relation" || key == "relations") {
                    if (!vars)
                        fail(path, line, "vars must be declared before relations");
                    try {
                        relations.push_back(parse_poly(value, vars));
                    } catch (const ParseError& e) {
                        fail(path, line, e.what());
                    }
                } else {
                    fail(path, line, "unknown key '" + key + "' in [ring]");
                }
            }
        }
    }
    if (!vars)
        throw ParseError(path + ": missing [ring] vars", 0);
    for (const auto& sec : sections) {
        if (sec.name == "potential") {
            for (const auto& [key, value, line] : sec.entries) {
                if (key != "W")
                    fail(path, line, "unknown key '" + key + "' in [potential]");
                try {
                    potential = parse_poly(value, vars);
                } catch (const ParseError& e) {
                    fail(path, line, e.what());
                }
            }
        }
    }
    if (!potential)
        throw ParseError(path + ": missing [potential] W", 0);

    ModelFile out;
    out.path = path;
    out.model = LGModel::make(vars, Ideal::make(vars, std::move(relations)), *potential);

    for (const auto& sec : sections) {
        if (sec.name.rfind("mf ", 0) == 0) {
            std::string name = trim(sec.name.substr(3));
            if (name.empty())
                fail(path, sec.line, "factorization section needs a name");
            std::optional<Polynomial> v;
            std::optional<PolyMatrix> phi1, phi0;
            std::optional<std::size_t> n1, n0;
            for (const auto& [key, value, line] : sec.entries) {
                try {
                    if (key == "potential")
                        v = parse_poly(value, vars);
                    else if (key == "phi1")
                        phi1 = parse_matrix(value, vars);
                    else if (key == "phi0")
                        phi0 = parse_matrix(value, vars);
                    else if (key == "n1")
                        n1 = std::stoul(value);
                    else if (key == "n0")
                        n0 = std::stoul(value);
                    else
                        fail(path, line, "unknown key '" + key + "' in [mf " + name + "]");
                } catch (const ParseError& e) {
                    fail(path, line, e.what());
                }
            }
            if (!v || !phi1 || !phi0)
                fail(path, sec.line, "[mf " + name + "] needs potential, phi1 and phi0");
            // Degenerate shapes carry no size information in the matrix text.
            if (n1 || n0) {
                std::size_t want_n1 = n1.value_or(phi1->cols());
                std::size_t want_n0 = n0.value_or(phi1->rows());
                if (phi1->rows() * phi1->cols() == 0)
                    phi1 = PolyMatrix(vars, want_n0, want_n1);
                if (phi0->rows() * phi0->cols() == 0)
                    phi0 = PolyMatrix(vars, want_n1, want_n0);
            }
            try {
                out.factorizations.emplace(
                    name, MatrixFactorization::make(out.model, *v, *phi1, *phi0));
            } catch (const Error& e) {
                fail(path, sec.line, "[mf " + name + "]: " + e.what());
            }
        } else if (sec.name == "probes") {
            for (const auto& [key, value, line] : sec.entries) {
                try {
                    if (key == "point")
                        out.probes.push_back(parse_point_spec(out.model, value));
                    else if (key == "prime")
                        out.probes.push_back(parse_prime_spec(out.model, value));
                    else
                        fail(path, line, "unknown key '" + key + "' in [probes]");
                } catch (const Error& e) {
                    fail(path, line, e.what());
                }
            }
        } else if (sec.name != "ring" && sec.name != "potential") {
            fail(path, sec.line, "unknown section [" + sec.name + "]");
        }
    }
    return out;
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_file(buf.str(), path);
}

} // namespace mflocus
