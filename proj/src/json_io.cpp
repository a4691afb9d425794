#include "kroncalc/json_io.hpp"

#include "kroncalc/errors.hpp"

namespace kroncalc {

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error(ErrorKind::Input, "expected a rational string or integer, got " + j.dump());
}

json to_json(const QuasiPolynomial& p) {
    json cos = json::array();
    for (const auto& c : p.cosets()) {
        json row = json::array();
        for (const auto& x : c.coeffs()) row.push_back(rational_to_json(x));
        cos.push_back(row);
    }
    return json{{"period", p.period()}, {"cosets", cos}};
}

QuasiPolynomial quasipoly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("period") || !j.contains("cosets"))
        throw Error(ErrorKind::Input, "quasi-polynomial JSON needs period and cosets");
    long q = j.at("period").get<long>();
    std::vector<UniPoly> cos;
    for (const auto& row : j.at("cosets")) {
        std::vector<Rational> c;
        for (const auto& x : row) c.push_back(rational_from_json(x));
        cos.emplace_back(std::move(c));
    }
    return QuasiPolynomial(q, std::move(cos));
}

json to_json(const HilbertSeries& h) {
    json num = json::array();
    for (const auto& x : h.numerator()) {
        if (x.get_den() == 1 && x.get_num().fits_slong_p())
            num.push_back(x.get_num().get_si());
        else
            num.push_back(rational_to_json(x));
    }
    return json{{"numerator", num}, {"denominator", h.denominator()}};
}

HilbertSeries hilbert_from_json(const json& j) {
    if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator"))
        throw Error(ErrorKind::Input, "Hilbert series JSON needs numerator and denominator");
    std::vector<Rational> num;
    for (const auto& x : j.at("numerator")) num.push_back(rational_from_json(x));
    return HilbertSeries(std::move(num), j.at("denominator").get<std::vector<long>>());
}

}  // namespace kroncalc
