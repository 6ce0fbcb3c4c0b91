#pragma once

#include "lsh/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lsh {

// Components are 0-based internally and 1-based in documents and labels.
struct Generator {
    std::string name;
    int grading = 0;
    int src = 0;  // origin of the chord
    int dst = 0;  // end of the chord
};

class Alphabet {
public:
    explicit Alphabet(int components = 1);

    uint32_t add(Generator g);
    int components() const { return k_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](uint32_t id) const { return gens_[id]; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::optional<uint32_t> find(std::string_view name) const;
    // Throws InputError naming the unknown letter.
    uint32_t id(std::string_view name) const;

private:
    int k_;
    std::vector<Generator> gens_;
    std::unordered_map<std::string, uint32_t> index_;
};

using Letters = std::vector<uint32_t>;

// A path in the quiver. The empty word carries the component of its idempotent.
struct Word {
    Letters letters;
    int unit = -1;

    static Word idempotent(int component) { return Word{{}, component}; }
    static Word of(Letters l) { return Word{std::move(l), -1}; }
    bool empty() const { return letters.empty(); }
    std::size_t length() const { return letters.size(); }

    bool operator==(const Word&) const = default;
};

// Total order: length, then lexicographic on ids, then idempotent index.
bool operator<(const Word& a, const Word& b);

int left_end(const Alphabet& alpha, const Word& w);
int right_end(const Alphabet& alpha, const Word& w);
long long grading(const Alphabet& alpha, const Letters& letters);
inline long long grading(const Alphabet& alpha, const Word& w) { return grading(alpha, w.letters); }
bool is_composable(const Alphabet& alpha, const Letters& letters);
bool is_cyclically_composable(const Alphabet& alpha, const Letters& letters);
std::optional<Word> concat(const Alphabet& alpha, const Word& a, const Word& b);

class Element {
public:
    using Terms = std::map<Word, Q>;

    Element() = default;
    static Element of(Word w, const Q& c = Q(1));
    static Element unit(int component) { return of(Word::idempotent(component)); }

    void add(const Word& w, const Q& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element scaled(const Q& c) const;

    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    Q coefficient(const Word& w) const;
    bool operator==(const Element&) const = default;

private:
    Terms terms_;
};

Element multiply(const Alphabet& alpha, const Element& a, const Element& b);

// Graded cyclic permutation c_1 c_2...c_l -> c_2...c_l c_1 with its Koszul sign.
std::pair<Letters, int> koszul_rotate(const Alphabet& alpha, const Letters& w);

// Sign of the rotation moving the first `shift` letters to the end.
int rotation_sign(const Alphabet& alpha, const Letters& w, std::size_t shift);
Letters rotated(const Letters& w, std::size_t shift);

std::string format_letters(const Alphabet& alpha, const Letters& w);
std::string format_word(const Alphabet& alpha, const Word& w);
std::string format_element(const Alphabet& alpha, const Element& x);

// Power series in t with Element coefficients, truncated above t^order.
struct TruncatedSeries {
    int order = 0;
    std::vector<Element> coeff;  // size order+1

    explicit TruncatedSeries(int n = 0) : order(n), coeff(static_cast<std::size_t>(n) + 1) {}
    Element& at(int p) { return coeff.at(static_cast<std::size_t>(p)); }
    const Element& at(int p) const { return coeff.at(static_cast<std::size_t>(p)); }
};

TruncatedSeries series_multiply(const Alphabet& alpha, const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace lsh
