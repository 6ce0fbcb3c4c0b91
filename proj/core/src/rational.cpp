#include "lsh/rational.hpp"

#include "lsh/error.hpp"

#include <cctype>

namespace lsh {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

Q parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw InputError("malformed rational coefficient \"" + std::string(text) + "\"");
    Z n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0)
        throw InputError("zero denominator in \"" + std::string(text) + "\"");
    Q q(n, d);
    q.canonicalize();
    if (negative)
        q = -q;
    return q;
}

std::string to_string(const Q& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace lsh
