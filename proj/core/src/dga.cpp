#include "lsh/dga.hpp"

#include "lsh/error.hpp"

#include <functional>
#include <map>

namespace lsh {

uint32_t Dga::add_generator(Generator g)
{
    uint32_t id = alphabet.add(std::move(g));
    d.emplace_back();
    return id;
}

void Dga::set_differential(uint32_t id, Element dc)
{
    const Generator& c = alphabet[id];
    for (const auto& [w, coeff] : dc.terms()) {
        bool ok = w.empty() ? (w.unit == c.src && w.unit == c.dst)
                            : (is_composable(alphabet, w.letters) && left_end(alphabet, w) == c.dst &&
                               right_end(alphabet, w) == c.src);
        if (!ok)
            throw InputError("term " + format_word(alphabet, w) + " of d(" + c.name +
                             ") does not match the endpoints of " + c.name);
    }
    d.at(id) = std::move(dc);
}

Element d_word(const Dga& dga, const Word& w)
{
    Element out;
    const auto& l = w.letters;
    long long prefix = 0;
    for (std::size_t j = 0; j < l.size(); ++j) {
        int sign = sign_of_parity(prefix);
        for (const auto& [term, coeff] : dga.d[l[j]].terms()) {
            Letters r;
            r.reserve(l.size() + term.letters.size());
            r.insert(r.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(j));
            r.insert(r.end(), term.letters.begin(), term.letters.end());
            r.insert(r.end(), l.begin() + static_cast<std::ptrdiff_t>(j) + 1, l.end());
            out.add(r.empty() ? Word::idempotent(term.unit) : Word::of(std::move(r)), coeff * sign);
        }
        prefix += dga.alphabet[l[j]].grading;
    }
    return out;
}

Element extend_leibniz(const Dga& dga, const Element& x)
{
    Element out;
    for (const auto& [w, c] : x.terms()) {
        for (auto letter : w.letters)
            if (letter >= dga.alphabet.size())
                throw InputError("word contains unknown generator id " + std::to_string(letter));
        out += d_word(dga, w).scaled(c);
    }
    return out;
}

DgaReport check_d_squared(const Dga& dga)
{
    DgaReport report;
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id) {
        const Generator& c = dga.alphabet[id];
        for (const auto& [w, coeff] : dga.d[id].terms()) {
            long long g = grading(dga.alphabet, w);
            if (g != c.grading - 1)
                report.issues.push_back({c.name, "grading",
                                         "term " + format_word(dga.alphabet, w) + " of d(" + c.name +
                                             ") has grading " + std::to_string(g) + ", expected " +
                                             std::to_string(c.grading - 1)});
        }
        Element dd = extend_leibniz(dga, dga.d[id]);
        if (!dd.is_zero())
            report.issues.push_back({c.name, "d_squared", "d(d(" + c.name + ")) = " + format_element(dga.alphabet, dd)});
    }
    return report;
}

Element apply_morphism(const DgaMorphism& f, const Element& x)
{
    const Alphabet& tgt = f.target->alphabet;
    Element out;
    for (const auto& [w, c] : x.terms()) {
        Element acc = Element::unit(left_end(f.source->alphabet, w));
        for (auto letter : w.letters) {
            acc = multiply(tgt, acc, f.image.at(letter));
            if (acc.is_zero())
                break;
        }
        out += acc.scaled(c);
    }
    return out;
}

DgaMorphism identity_morphism(std::shared_ptr<const Dga> dga)
{
    DgaMorphism f;
    f.source = dga;
    f.target = dga;
    for (uint32_t id = 0; id < dga->alphabet.size(); ++id)
        f.image.push_back(Element::of(Word::of({id})));
    return f;
}

DgaMorphism compose(const DgaMorphism& g, const DgaMorphism& f)
{
    if (f.target.get() != g.source.get())
        throw InputError("cannot compose morphisms: target and source differ");
    DgaMorphism h;
    h.source = f.source;
    h.target = g.target;
    for (const auto& img : f.image)
        h.image.push_back(apply_morphism(g, img));
    return h;
}

MorphismReport check_morphism(const DgaMorphism& f)
{
    const Dga& src = *f.source;
    const Dga& tgt = *f.target;
    if (src.components() != tgt.components())
        throw InputError("morphism source and target have different component counts");
    if (f.image.size() != src.alphabet.size())
        throw InputError("morphism assignment does not cover every source generator");
    for (uint32_t id = 0; id < src.alphabet.size(); ++id) {
        const Generator& c = src.alphabet[id];
        for (const auto& [w, coeff] : f.image[id].terms()) {
            if (grading(tgt.alphabet, w) != c.grading)
                throw InputError("image of " + c.name + " contains " + format_word(tgt.alphabet, w) +
                                 " of grading " + std::to_string(grading(tgt.alphabet, w)) + ", expected " +
                                 std::to_string(c.grading));
            if (left_end(tgt.alphabet, w) != c.dst || right_end(tgt.alphabet, w) != c.src)
                throw InputError("image of " + c.name + " contains " + format_word(tgt.alphabet, w) +
                                 " with mismatched endpoints");
        }
    }
    for (uint32_t id = 0; id < src.alphabet.size(); ++id) {
        Element lhs = apply_morphism(f, src.d[id]);
        Element rhs = extend_leibniz(tgt, f.image[id]);
        lhs -= rhs;
        if (!lhs.is_zero())
            return {false, src.alphabet[id].name, lhs};
    }
    return {};
}

Q augment(const Dga& dga, const Augmentation& eps, const Element& x)
{
    Q total = 0;
    for (const auto& [w, c] : x.terms()) {
        Q v = c;
        for (auto letter : w.letters) {
            v *= eps.value.at(letter);
            if (v == 0)
                break;
        }
        total += v;
    }
    (void)dga;
    return total;
}

bool is_augmentation(const Dga& dga, const Augmentation& eps)
{
    if (eps.value.size() != dga.alphabet.size())
        return false;
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id) {
        if (eps.value[id] != 0 && dga.alphabet[id].grading != 0)
            return false;
        if (augment(dga, eps, dga.d[id]) != 0)
            return false;
    }
    return true;
}

std::vector<Augmentation> enumerate_augmentations(const Dga& dga, const std::vector<Q>& values)
{
    std::vector<uint32_t> free;
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
        if (dga.alphabet[id].grading == 0)
            free.push_back(id);
    double combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i)
        combos *= static_cast<double>(values.size());
    if (combos > 5e6)
        throw InputError("augmentation search space too large (" + std::to_string(free.size()) +
                         " grading-0 generators)");

    std::vector<Augmentation> found;
    if (values.empty() && !free.empty())
        return found;
    std::vector<std::size_t> digit(free.size(), 0);
    while (true) {
        Augmentation eps{std::vector<Q>(dga.alphabet.size(), Q(0))};
        for (std::size_t i = 0; i < free.size(); ++i)
            eps.value[free[i]] = values[digit[i]];
        if (is_augmentation(dga, eps))
            found.push_back(std::move(eps));
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == values.size())
            digit[i++] = 0;
        if (i == digit.size())
            break;
    }
    return found;
}

GradedChainComplex linearize(const Dga& dga, const Augmentation& eps)
{
    if (!is_augmentation(dga, eps))
        throw InputError("invalid augmentation");
    ComplexBuilder b;
    int lo = 0, hi = -1;
    bool first = true;
    for (const auto& g : dga.alphabet.generators()) {
        b.add(g.grading, g.name);
        lo = first ? g.grading : std::min(lo, g.grading);
        hi = first ? g.grading : std::max(hi, g.grading);
        first = false;
    }
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id) {
        const Generator& c = dga.alphabet[id];
        for (const auto& [w, coeff] : dga.d[id].terms()) {
            const auto& l = w.letters;
            for (std::size_t j = 0; j < l.size(); ++j) {
                Q v = coeff;
                for (std::size_t i = 0; i < l.size() && v != 0; ++i)
                    if (i != j)
                        v *= eps.value[l[i]];
                if (v != 0)
                    b.add_entry(c.grading, c.name, dga.alphabet[l[j]].name, v);
            }
        }
    }
    GradedChainComplex out = b.finish("linearized", lo, hi);
    out.complete = true;
    return out;
}

Dga adjoin_q(const Dga& dga, const std::optional<QDeformation>& deformation)
{
    if (!deformation)
        throw InputError("missing deformed-differential data for q");
    const QDeformation& def = *deformation;
    if (def.component < 0 || def.component >= dga.components())
        throw InputError("q component outside 1.." + std::to_string(dga.components()));
    Dga out(dga.components(), dga.n);
    out.metadata = dga.metadata;
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
        out.add_generator(dga.alphabet[id]);
    out.add_generator({"q", def.q_grading, def.component, def.component});
    for (uint32_t id = 0; id < dga.alphabet.size(); ++id)
        out.set_differential(id, dga.d[id]);
    for (const auto& [id, extra] : def.terms) {
        if (id >= dga.alphabet.size())
            throw InputError("deformation term for an unknown generator");
        const Generator& c = out.alphabet[id];
        for (const auto& [w, coeff] : extra.terms()) {
            (void)coeff;
            if (grading(out.alphabet, w) != c.grading - 1)
                throw InputError("deformed term " + format_word(out.alphabet, w) + " of d(" + c.name +
                                 ") has grading " + std::to_string(grading(out.alphabet, w)) + ", expected " +
                                 std::to_string(c.grading - 1));
        }
        Element dc = out.d[id];
        dc += extra;
        out.set_differential(id, dc);
    }
    return out;
}

namespace {

std::string block_name(const Alphabet& alpha, const Letters& w, const char* pre, const char* post)
{
    std::string s = pre;
    if (!w.empty()) {
        s += "{";
        for (std::size_t i = 0; i < w.size(); ++i)
            s += (i ? "." : "") + alpha[w[i]].name;
        s += "}";
    }
    return s + post;
}

}  // namespace

RelQResult rel_q_construction(const Dga& dga_q, uint32_t q, int max_word_len)
{
    const Alphabet& alpha = dga_q.alphabet;
    if (q >= alpha.size())
        throw InputError("rel-q construction needs a distinguished q");
    const Generator& qg = alpha[q];
    if (qg.src != qg.dst)
        throw InputError("q must be a self-chord of one component");
    if (qg.grading != dga_q.n - 2)
        throw InputError("rel-q construction needs the point class q of grading n-2 = " +
                         std::to_string(dga_q.n - 2));
    if (!dga_q.d[q].is_zero())
        throw MathError("q^2 relation inconsistent with supplied differential: d(q) = " +
                        format_element(alpha, dga_q.d[q]));

    // q-free composable words w with w q composable.
    std::vector<Letters> words{{}};
    std::vector<Letters> frontier{{}};
    for (int len = 1; len <= max_word_len; ++len) {
        std::vector<Letters> next;
        for (const auto& w : frontier)
            for (uint32_t c = 0; c < alpha.size(); ++c) {
                if (c == q)
                    continue;
                // Grow to the left so the right end stays at q.
                if (w.empty() ? alpha[c].src != qg.dst : alpha[c].src != alpha[w.front()].dst)
                    continue;
                Letters v{c};
                v.insert(v.end(), w.begin(), w.end());
                next.push_back(std::move(v));
            }
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    auto b = std::make_shared<Dga>(dga_q.components(), dga_q.n);
    auto t = std::make_shared<Dga>(dga_q.components(), dga_q.n);
    std::map<Letters, uint32_t> block_id;
    for (const auto& w : words) {
        int dst = w.empty() ? qg.dst : alpha[w.front()].dst;
        int g = static_cast<int>(grading(alpha, w));
        block_id[w] = b->add_generator({block_name(alpha, w, "", "q"), g + qg.grading, qg.src, dst});
        t->add_generator({block_name(alpha, w, "x-", "x+"), g + dga_q.n - 2, qg.src, dst});
    }
    uint32_t a = t->add_generator({"a", dga_q.n - 1, qg.src, qg.src});

    RelQResult result;
    for (const auto& w : words) {
        Element dw = d_word(dga_q, w.empty() ? Word::idempotent(qg.dst) : Word::of(w));
        Element dg;
        for (const auto& [v, coeff] : dw.terms()) {
            Letters full = v.letters;
            full.push_back(q);
            Letters blocks;
            Letters prefix;
            bool zero = false, missing = false;
            for (auto letter : full) {
                if (letter != q) {
                    prefix.push_back(letter);
                    continue;
                }
                if (prefix.empty() && !blocks.empty()) {
                    zero = true;  // q q = 0
                    break;
                }
                auto it = block_id.find(prefix);
                if (it == block_id.end()) {
                    missing = true;
                    break;
                }
                blocks.push_back(it->second);
                prefix.clear();
            }
            if (zero)
                continue;
            if (missing) {
                result.truncated = true;
                continue;
            }
            dg.add(Word::of(blocks), coeff);
        }
        uint32_t id = block_id[w];
        b->set_differential(id, dg);
        t->set_differential(id, dg);
    }
    t->set_differential(a, Element::of(Word::of({block_id[Letters{}]})));

    result.b = b;
    result.target = t;
    result.phi.source = b;
    result.phi.target = t;
    for (uint32_t id = 0; id < b->alphabet.size(); ++id)
        result.phi.image.push_back(Element::of(Word::of({id})));
    if (!result.truncated) {
        auto rb = check_d_squared(*b);
        if (!rb.ok())
            throw MathError("q^2 relation inconsistent with supplied differential: " + rb.issues.front().detail);
        auto rm = check_morphism(result.phi);
        if (!rm.ok)
            throw MathError("rel-q map fails to be a chain map at " + rm.generator);
    }
    return result;
}

}  // namespace lsh
