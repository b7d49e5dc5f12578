#include "mdz/literal.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mdz {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::int64_t parse_int(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) throw ParseError("empty integer literal");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) throw ParseError("bad integer literal: '" + s + "'");
    return v;
}

double parse_real(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) throw ParseError("empty number literal");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw ParseError("bad number literal: '" + s + "'");
    return v;
}

}  // namespace

QuadField parse_field(const std::string& lit) {
    std::string t = trim(lit);
    if (t == "Q" || t == "q") return QuadField::rationals();
    if (t.rfind("d=", 0) == 0) {
        try {
            return QuadField::quadratic(parse_int(t.substr(2)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("bad field literal: ") + e.what());
        }
    }
    throw ParseError("bad field literal: '" + lit + "' (expected Q or d=<int>)");
}

FieldElement parse_element(const std::string& lit) {
    auto parts = split(trim(lit), ',');
    if (parts.size() == 1) return {parse_int(parts[0]), 0};
    if (parts.size() == 2) return {parse_int(parts[0]), parse_int(parts[1])};
    throw ParseError("bad element literal: '" + lit + "'");
}

Cone parse_cone(const QuadField& f, const std::string& lit) {
    std::vector<FieldElement> gens;
    for (const auto& part : split(trim(lit), ';')) gens.push_back(parse_element(part));
    try {
        return Cone(f, std::move(gens));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad cone literal: ") + e.what());
    }
}

std::vector<Cone> parse_cones(const QuadField& f, const std::string& lit) {
    std::vector<Cone> out;
    for (const auto& part : split(trim(lit), '|')) out.push_back(parse_cone(f, part));
    return out;
}

cplx parse_complex(const std::string& lit) {
    std::string t = trim(lit);
    if (t.empty()) throw ParseError("empty complex literal");
    if (t.back() != 'j') return {parse_real(t), 0.0};
    std::string body = t.substr(0, t.size() - 1);
    // split at the last top-level +/- (not an exponent sign, not leading)
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    if (cut == std::string::npos) return {0.0, parse_real(body)};  // pure imaginary "2j"
    double re = parse_real(body.substr(0, cut));
    std::string im = body.substr(cut);
    if (im == "+") return {re, 1.0};
    if (im == "-") return {re, -1.0};
    return {re, parse_real(im)};
}

ExponentMatrix parse_exponents(const std::string& lit) {
    auto rows = split(trim(lit), ';');
    ExponentMatrix m(static_cast<int>(rows.size()), static_cast<int>(split(rows[0], ',').size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cells = split(rows[i], ',');
        if (static_cast<int>(cells.size()) != m.cols) throw ParseError("ragged exponent matrix");
        for (std::size_t j = 0; j < cells.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = parse_complex(cells[j]);
    }
    return m;
}

std::string print_field(const QuadField& f) {
    return f.is_rational() ? "Q" : "d=" + std::to_string(f.d());
}

std::string print_element(const FieldElement& e) { return std::to_string(e.x) + "," + std::to_string(e.y); }

std::string print_cone(const Cone& c) {
    std::string s;
    for (std::size_t j = 0; j < c.generators().size(); ++j) {
        if (j) s += ';';
        s += print_element(c.generators()[j]);
    }
    return s;
}

std::string print_cones(const std::vector<Cone>& cones) {
    std::string s;
    for (std::size_t j = 0; j < cones.size(); ++j) {
        if (j) s += '|';
        s += print_cone(cones[j]);
    }
    return s;
}

std::string print_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize signed zero
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

std::string print_double15(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string print_complex(cplx v) {
    if (v.imag() == 0.0) return print_double(v.real());
    std::string s = print_double(v.real());
    s += v.imag() < 0 ? "-" : "+";
    s += print_double(std::abs(v.imag()));
    s += 'j';
    return s;
}

std::string print_exponents(const ExponentMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows; ++i) {
        if (i) s += ';';
        for (int j = 0; j < m.cols; ++j) {
            if (j) s += ',';
            s += print_complex(m.at(i, j));
        }
    }
    return s;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    throw ParseError("bad format '" + s + "' (json|csv|text)");
}

void apply_config_line(RunConfig& cfg, const std::string& raw) {
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    line = trim(line);
    if (line.empty()) return;
    auto eq = line.find('=');
    // field literals themselves contain '=' after the key, e.g. field=d=-1
    if (eq == std::string::npos) throw ParseError("bad config line: '" + raw + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "field") cfg.field = val;
    else if (key == "cones") cfg.cones = val;
    else if (key == "exp") cfg.exponents = val;
    else if (key == "A") cfg.A = parse_int(val);
    else if (key == "tol") cfg.tol = parse_real(val);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(val));
    else if (key == "format") cfg.format = parse_format(val);
    else throw ParseError("unknown config key: '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) apply_config_line(cfg, line);
    return cfg;
}

std::string print_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "field=" << cfg.field << "\n"
       << "cones=" << cfg.cones << "\n"
       << "exp=" << cfg.exponents << "\n"
       << "A=" << cfg.A << "\n"
       << "tol=" << print_double(cfg.tol) << "\n"
       << "threads=" << cfg.threads << "\n"
       << "format=" << (cfg.format == OutputFormat::json ? "json" : cfg.format == OutputFormat::csv ? "csv" : "text")
       << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) apply_config_line(cfg, line);
    return cfg;
}

MdzvSpec config_to_spec(const RunConfig& cfg) {
    MdzvSpec spec;
    spec.field = parse_field(cfg.field);
    spec.cones = parse_cones(spec.field, cfg.cones);
    spec.exponents = parse_exponents(cfg.exponents);
    spec.params.A = cfg.A;
    spec.params.tol = cfg.tol;
    spec.params.threads = cfg.threads;
    return spec;
}

}  // namespace mdz
