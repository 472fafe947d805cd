#include "oscint/io.hpp"

#include "oscint/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace oscint {

std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error("parse_double: bad number '" + s + "'");
    return v;
}

std::string poly_to_json(const Poly& p) {
    nlohmann::json j;
    j["degree"] = p.degree();
    nlohmann::json coeffs = nlohmann::json::array();
    if (p.rep() == Rep::exact) {
        for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(rational_to_string(p.coeff(i)));
    } else {
        for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(format_double(p.coeff_d(i)));
    }
    j["coeffs"] = coeffs;
    return j.dump(2);
}

Poly poly_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw Error("polynomial descriptor: missing coeffs array");
    std::vector<Rational> cs;
    for (const auto& c : j["coeffs"]) {
        if (c.is_string()) cs.push_back(rational_from_string(c.get<std::string>()));
        else if (c.is_number()) cs.push_back(rational_from_double(c.get<double>()));
        else throw Error("polynomial descriptor: coefficient must be string or number");
    }
    Poly p = Poly::from_rational(std::move(cs));
    if (j.contains("degree") && j["degree"].is_number_integer()) {
        int d = j["degree"].get<int>();
        if (d != p.degree())
            throw Error("polynomial descriptor: declared degree " + std::to_string(d) +
                        " but coefficients give " + std::to_string(p.degree()));
    }
    return p;
}

Poly read_poly_file(const std::string& path) {
    return poly_from_json(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing", path);
    f << content;
    if (!f) throw IoError("write failed", path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw NotFound(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace oscint
