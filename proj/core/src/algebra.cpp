#include "lsh/algebra.hpp"

#include "lsh/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lsh {

namespace {

bool valid_name(std::string_view name)
{
    if (name.empty())
        return false;
    for (char c : name) {
        auto u = static_cast<unsigned char>(c);
        if (std::isspace(u) || c == '^' || c == '(' || c == ')' || c == ',' || c == '|' || c == '"' || c == '[' ||
            c == ']')
            return false;
    }
    // e_<digits> is reserved for idempotents.
    if (name.size() > 2 && name[0] == 'e' && name[1] == '_' &&
        std::all_of(name.begin() + 2, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return false;
    return true;
}

}  // namespace

Alphabet::Alphabet(int components) : k_(components)
{
    if (components < 1)
        throw InputError("component count must be at least 1");
}

uint32_t Alphabet::add(Generator g)
{
    if (!valid_name(g.name))
        throw InputError("invalid generator name \"" + g.name + "\"");
    if (g.src < 0 || g.src >= k_ || g.dst < 0 || g.dst >= k_)
        throw InputError("generator \"" + g.name + "\" has an endpoint outside 1.." + std::to_string(k_));
    if (index_.count(g.name))
        throw InputError("duplicate generator \"" + g.name + "\"");
    auto id = static_cast<uint32_t>(gens_.size());
    index_.emplace(g.name, id);
    gens_.push_back(std::move(g));
    return id;
}

std::optional<uint32_t> Alphabet::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

uint32_t Alphabet::id(std::string_view name) const
{
    auto found = find(name);
    if (!found)
        throw InputError("unknown generator \"" + std::string(name) + "\"");
    return *found;
}

bool operator<(const Word& a, const Word& b)
{
    if (a.letters.size() != b.letters.size())
        return a.letters.size() < b.letters.size();
    if (a.letters != b.letters)
        return a.letters < b.letters;
    return a.unit < b.unit;
}

int left_end(const Alphabet& alpha, const Word& w)
{
    return w.empty() ? w.unit : alpha[w.letters.front()].dst;
}

int right_end(const Alphabet& alpha, const Word& w)
{
    return w.empty() ? w.unit : alpha[w.letters.back()].src;
}

long long grading(const Alphabet& alpha, const Letters& letters)
{
    long long g = 0;
    for (auto c : letters)
        g += alpha[c].grading;
    return g;
}

bool is_composable(const Alphabet& alpha, const Letters& letters)
{
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
        if (alpha[letters[i]].src != alpha[letters[i + 1]].dst)
            return false;
    return true;
}

bool is_cyclically_composable(const Alphabet& alpha, const Letters& letters)
{
    if (letters.empty() || !is_composable(alpha, letters))
        return false;
    return alpha[letters.back()].src == alpha[letters.front()].dst;
}

std::optional<Word> concat(const Alphabet& alpha, const Word& a, const Word& b)
{
    if (right_end(alpha, a) != left_end(alpha, b))
        return std::nullopt;
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    Word w;
    w.letters.reserve(a.letters.size() + b.letters.size());
    w.letters.insert(w.letters.end(), a.letters.begin(), a.letters.end());
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
}

Element Element::of(Word w, const Q& c)
{
    Element e;
    e.add(w, c);
    return e;
}

void Element::add(const Word& w, const Q& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o)
{
    for (const auto& [w, c] : o.terms_)
        add(w, c);
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    for (const auto& [w, c] : o.terms_)
        add(w, -c);
    return *this;
}

Element Element::scaled(const Q& c) const
{
    Element r;
    if (c == 0)
        return r;
    for (const auto& [w, x] : terms_)
        r.terms_.emplace(w, x * c);
    return r;
}

Q Element::coefficient(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Q(0) : it->second;
}

Element multiply(const Alphabet& alpha, const Element& a, const Element& b)
{
    Element r;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms())
            if (auto w = concat(alpha, u, v))
                r.add(*w, cu * cv);
    return r;
}

std::pair<Letters, int> koszul_rotate(const Alphabet& alpha, const Letters& w)
{
    if (!is_cyclically_composable(alpha, w))
        throw InputError("word " + format_letters(alpha, w) + " is not cyclically composable");
    return {rotated(w, 1), rotation_sign(alpha, w, 1)};
}

int rotation_sign(const Alphabet& alpha, const Letters& w, std::size_t shift)
{
    shift %= (w.empty() ? 1 : w.size());
    long long head = 0, tail = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        (i < shift ? head : tail) += alpha[w[i]].grading;
    return sign_of_parity(head * tail);
}

Letters rotated(const Letters& w, std::size_t shift)
{
    if (w.empty())
        return w;
    shift %= w.size();
    Letters r;
    r.reserve(w.size());
    r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(shift), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(shift));
    return r;
}

std::string format_letters(const Alphabet& alpha, const Letters& w)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i])
            ++j;
        if (i > 0)
            out << ' ';
        out << alpha[w[i]].name;
        if (j - i > 1)
            out << '^' << (j - i);
        i = j;
    }
    return out.str();
}

std::string format_word(const Alphabet& alpha, const Word& w)
{
    if (w.empty())
        return "e_" + std::to_string(w.unit + 1);
    return format_letters(alpha, w.letters);
}

std::string format_element(const Alphabet& alpha, const Element& x)
{
    if (x.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        Q mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        if (mag != 1)
            out << to_string(mag) << '*';
        out << format_word(alpha, w);
        first = false;
    }
    return out.str();
}

TruncatedSeries series_multiply(const Alphabet& alpha, const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.order != b.order)
        throw InputError("series truncation orders differ (" + std::to_string(a.order) + " vs " +
                         std::to_string(b.order) + ")");
    TruncatedSeries r(a.order);
    for (int p = 0; p <= a.order; ++p) {
        if (a.at(p).is_zero())
            continue;
        for (int s = 0; p + s <= a.order; ++s)
            if (!b.at(s).is_zero())
                r.at(p + s) += multiply(alpha, a.at(p), b.at(s));
    }
    return r;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.order != b.order)
        throw InputError("series truncation orders differ (" + std::to_string(a.order) + " vs " +
                         std::to_string(b.order) + ")");
    TruncatedSeries r = a;
    for (int p = 0; p <= a.order; ++p)
        r.at(p) += b.at(p);
    return r;
}

}  // namespace lsh
