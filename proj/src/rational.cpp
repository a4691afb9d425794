#include "kroncalc/rational.hpp"

#include <numeric>

#include "kroncalc/errors.hpp"

namespace kroncalc {

const char* error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Input: return "InputError";
        case ErrorKind::UnderdeterminedCoset: return "UnderdeterminedCoset";
        case ErrorKind::InconsistentSamples: return "InconsistentSamples";
        case ErrorKind::NotRational: return "NotRational";
        case ErrorKind::NonUnitInversion: return "NonUnitInversion";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorKind::NotRegular: return "NotRegular";
        case ErrorKind::DirectionSingular: return "DirectionSingular";
        case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
        case ErrorKind::SingularCoordinateChange: return "SingularCoordinateChange";
        case ErrorKind::NegativeMultiplicity: return "NegativeMultiplicity";
        case ErrorKind::UnboundedCone: return "UnboundedCone";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::NonregularX: return "NonregularX";
        case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
        case ErrorKind::OracleMismatch: return "OracleMismatch";
    }
    return "Error";
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Input:
        case ErrorKind::UnderdeterminedCoset:
        case ErrorKind::RankDeficient:
        case ErrorKind::NotRegular:
        case ErrorKind::DirectionSingular:
        case ErrorKind::UnboundedCone:
        case ErrorKind::NonregularX:
        case ErrorKind::NonUnitInversion:
            return 2;
        case ErrorKind::EnumerationCapExceeded:
        case ErrorKind::CapExceeded:
            return 4;
        default:
            return 3;
    }
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

Rational parse_rational(std::string_view s) {
    std::string str(s);
    auto b = str.find_first_not_of(" \t");
    auto e = str.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorKind::Input, "empty rational");
    str = str.substr(b, e - b + 1);
    if (!str.empty() && str[0] == '+') str = str.substr(1);
    Rational r;
    try {
        auto slash = str.find('/');
        if (slash == std::string::npos) {
            r = Rational(Integer(str, 10));
        } else {
            Integer n(str.substr(0, slash), 10), d(str.substr(slash + 1), 10);
            if (d == 0) throw Error(ErrorKind::Input, "zero denominator in '" + str + "'");
            r = Rational(n, d);
            r.canonicalize();
        }
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::Input, "cannot parse rational '" + str + "'");
    }
    return r;
}

Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

}  // namespace kroncalc
