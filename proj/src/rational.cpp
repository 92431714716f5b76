#include "ffk/rational.hpp"

#include <stdexcept>

namespace ffk {

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto well_formed = [](const std::string& s, bool allow_sign) {
        std::size_t start = (allow_sign && !s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() == start) return false;
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    if (!well_formed(num, true) || !well_formed(den, false)) {
        throw std::invalid_argument("malformed rational '" + text + "'");
    }
    Integer d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q(Integer(num, 10), d);
    q.canonicalize();
    return q;
}

}  // namespace ffk
