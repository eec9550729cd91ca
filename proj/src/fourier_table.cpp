#include "skmaass/fourier_table.hpp"

#include <fstream>
#include <sstream>

namespace skm {

bool FourierTable::in_bound(const QForm& t) const {
    return t.a() <= bound && t.c() <= bound;
}

Rat FourierTable::coeff(const QForm& t) const {
    if (!in_bound(t))
        throw bound_error("FourierTable::coeff: key " + t.a().get_str() + " " +
                          t.b().get_str() + " " + t.c().get_str() +
                          " outside completeness bound " + std::to_string(bound));
    auto it = coeffs.find(t);
    return it == coeffs.end() ? Rat(0) : it->second;
}

void FourierTable::set(const QForm& t, Rat v) {
    if (!in_bound(t))
        throw bound_error("FourierTable::set: key outside completeness bound");
    if (v == 0)
        coeffs.erase(t);
    else
        coeffs[t] = std::move(v);
}

namespace {

[[noreturn]] void fail(const std::string& source, long line, const std::string& msg) {
    throw sfc_parse_error(source + ":" + std::to_string(line) + ": " + msg);
}

Int parse_int(const std::string& tok, const std::string& source, long line) {
    /* mpz accepts leading '+'; keep the accepted alphabet tight instead */
    if (tok.empty())
        fail(source, line, "empty integer token");
    std::size_t i = tok[0] == '-' ? 1 : 0;
    if (i == tok.size())
        fail(source, line, "malformed integer '" + tok + "'");
    for (; i < tok.size(); ++i)
        if (tok[i] < '0' || tok[i] > '9')
            fail(source, line, "malformed integer '" + tok + "'");
    return Int(tok);
}

Rat parse_rat(const std::string& tok, const std::string& source, long line) {
    const std::size_t slash = tok.find('/');
    if (slash == std::string::npos)
        fail(source, line, "malformed rational '" + tok + "' (expected num/den)");
    if (tok.find('/', slash + 1) != std::string::npos)
        fail(source, line, "malformed rational '" + tok + "'");
    const Int num = parse_int(tok.substr(0, slash), source, line);
    const Int den = parse_int(tok.substr(slash + 1), source, line);
    if (den <= 0)
        fail(source, line, "denominator must be positive in '" + tok + "'");
    return make_rat(num, den);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t)
        toks.push_back(t);
    return toks;
}

} // namespace

FourierTable read_sfc(std::istream& in, const std::string& source) {
    std::string line;
    long lineno = 0;

    if (!std::getline(in, line))
        fail(source, 1, "empty input, expected 'SFC 1'");
    ++lineno;
    if (tokens_of(line) != std::vector<std::string>{"SFC", "1"})
        fail(source, lineno, "bad magic, expected 'SFC 1'");

    if (!std::getline(in, line))
        fail(source, 2, "missing header line");
    ++lineno;
    const auto head = tokens_of(line);
    if (head.size() != 8 || head[0] != "k" || head[2] != "N1" || head[4] != "N2" ||
        head[6] != "bound")
        fail(source, lineno, "bad header, expected 'k <w> N1 <n1> N2 <n2> bound <b>'");

    FourierTable t;
    const Int k = parse_int(head[1], source, lineno);
    const Int bound = parse_int(head[7], source, lineno);
    t.n1 = parse_int(head[3], source, lineno);
    t.n2 = parse_int(head[5], source, lineno);
    if (k < 1 || !k.fits_slong_p())
        fail(source, lineno, "weight out of range");
    if (bound < 0 || !bound.fits_slong_p())
        fail(source, lineno, "bound out of range");
    t.k = k.get_si();
    t.bound = bound.get_si();
    if (t.n1 < 1 || t.n2 < 1 || !mpz_divisible_p(t.n2.get_mpz_t(), t.n1.get_mpz_t()))
        fail(source, lineno, "levels must be positive with N1 | N2");

    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokens_of(line);
        if (toks.empty())
            continue;
        if (toks.size() != 4)
            fail(source, lineno, "expected '<a> <b> <c> <num>/<den>'");
        const Int a = parse_int(toks[0], source, lineno);
        const Int b = parse_int(toks[1], source, lineno);
        const Int c = parse_int(toks[2], source, lineno);
        if (a <= 0 || c <= 0 || b * b - 4 * a * c >= 0)
            fail(source, lineno, "key is not positive definite");
        const QForm key(a, b, c);
        if (!t.in_bound(key))
            fail(source, lineno, "key outside the declared bound");
        const Rat v = parse_rat(toks[3], source, lineno);
        if (v == 0)
            fail(source, lineno, "zero coefficients must be omitted");
        if (t.coeffs.count(key))
            fail(source, lineno, "duplicate key");
        t.coeffs.emplace(key, v);
    }
    return t;
}

FourierTable read_sfc_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw sfc_parse_error(path + ": cannot open for reading");
    return read_sfc(in, path);
}

void write_sfc(std::ostream& out, const FourierTable& t) {
    out << "SFC 1\n";
    out << "k " << t.k << " N1 " << t.n1 << " N2 " << t.n2 << " bound " << t.bound << "\n";
    for (const auto& [key, v] : t.coeffs)
        out << key.a() << " " << key.b() << " " << key.c() << " " << v.get_num() << "/"
            << v.get_den() << "\n";
}

void write_sfc_file(const std::string& path, const FourierTable& t) {
    std::ofstream out(path);
    if (!out)
        throw sfc_parse_error(path + ": cannot open for writing");
    write_sfc(out, t);
    out.flush();
    if (!out)
        throw sfc_parse_error(path + ": write failed");
}

} // namespace skm
