#include "lsh/chain_complex.hpp"

#include "lsh/error.hpp"

namespace lsh {

const char* guard_name(Guard g)
{
    return g == Guard::Exact ? "EXACT" : "TRUNCATED";
}

bool SparseMatrix::is_zero() const
{
    for (const auto& col : columns)
        if (!col.empty())
            return false;
    return true;
}

Q SparseMatrix::at(int r, int c) const
{
    for (const auto& [row, v] : columns.at(static_cast<std::size_t>(c)))
        if (row == r)
            return v;
    return Q(0);
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& col : columns)
        n += col.size();
    return n;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols != b.rows)
        throw MathError("matrix shape mismatch in product");
    SparseMatrix r(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) {
        std::map<int, Q> acc;
        for (const auto& [k, bv] : b.columns[static_cast<std::size_t>(j)])
            for (const auto& [i, av] : a.columns[static_cast<std::size_t>(k)])
                acc[i] += av * bv;
        for (auto& [i, v] : acc)
            if (v != 0)
                r.columns[static_cast<std::size_t>(j)].emplace_back(i, v);
    }
    return r;
}

SparseMatrix transpose(const SparseMatrix& m)
{
    SparseMatrix t(m.cols, m.rows);
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.columns[static_cast<std::size_t>(j)])
            t.columns[static_cast<std::size_t>(i)].emplace_back(j, v);
    return t;
}

std::size_t GradedChainComplex::dim(int d) const
{
    auto it = basis.find(d);
    return it == basis.end() ? 0 : it->second.size();
}

const std::vector<std::string>& GradedChainComplex::basis_at(int d) const
{
    static const std::vector<std::string> empty;
    auto it = basis.find(d);
    return it == basis.end() ? empty : it->second;
}

SparseMatrix GradedChainComplex::boundary_at(int d) const
{
    auto it = boundary.find(d);
    if (it != boundary.end())
        return it->second;
    return SparseMatrix(static_cast<int>(dim(d - 1)), static_cast<int>(dim(d)));
}

int GradedChainComplex::index_of(int d, const std::string& label) const
{
    const auto& b = basis_at(d);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] == label)
            return static_cast<int>(i);
    return -1;
}

std::vector<std::pair<std::string, Q>> GradedChainComplex::image(int d, const std::string& label) const
{
    std::vector<std::pair<std::string, Q>> out;
    int j = index_of(d, label);
    auto it = boundary.find(d);
    if (j < 0 || it == boundary.end())
        return out;
    const auto& targets = basis_at(d - 1);
    for (const auto& [i, v] : it->second.columns[static_cast<std::size_t>(j)])
        out.emplace_back(targets[static_cast<std::size_t>(i)], v);
    return out;
}

DSquaredCheck check_d_squared(const GradedChainComplex& c)
{
    for (const auto& [d, m] : c.boundary) {
        auto lower = c.boundary.find(d - 1);
        if (lower == c.boundary.end())
            continue;
        SparseMatrix sq = multiply(lower->second, m);
        for (int j = 0; j < sq.cols; ++j) {
            const auto& col = sq.columns[static_cast<std::size_t>(j)];
            if (col.empty())
                continue;
            DSquaredCheck r;
            r.ok = false;
            r.degree = d;
            r.detail = "d^2(" + c.basis_at(d)[static_cast<std::size_t>(j)] + ") has coefficient " +
                       to_string(col.front().second) + " on " +
                       c.basis_at(d - 2)[static_cast<std::size_t>(col.front().first)];
            return r;
        }
    }
    return {};
}

int ComplexBuilder::add(int degree, const std::string& label)
{
    auto& deg = degrees_[degree];
    auto [it, inserted] = deg.index.emplace(label, static_cast<int>(deg.labels.size()));
    if (!inserted)
        throw MathError("duplicate basis label \"" + label + "\" in degree " + std::to_string(degree));
    deg.labels.push_back(label);
    deg.columns.emplace_back();
    return it->second;
}

bool ComplexBuilder::has(int degree, const std::string& label) const
{
    auto it = degrees_.find(degree);
    return it != degrees_.end() && it->second.index.count(label) > 0;
}

bool ComplexBuilder::add_entry(int degree, const std::string& src, const std::string& dst, const Q& coeff)
{
    auto s = degrees_.find(degree);
    auto t = degrees_.find(degree - 1);
    if (s == degrees_.end() || t == degrees_.end())
        return false;
    auto si = s->second.index.find(src);
    auto ti = t->second.index.find(dst);
    if (si == s->second.index.end() || ti == t->second.index.end())
        return false;
    if (coeff == 0)
        return true;
    auto& col = s->second.columns[static_cast<std::size_t>(si->second)];
    Q& slot = col[ti->second];
    slot += coeff;
    if (slot == 0)
        col.erase(ti->second);
    return true;
}

void ComplexBuilder::add_complex(const GradedChainComplex& c)
{
    for (const auto& [d, labels] : c.basis)
        for (const auto& l : labels)
            add(d, l);
    for (const auto& [d, m] : c.boundary) {
        const auto& src = c.basis_at(d);
        const auto& dst = c.basis_at(d - 1);
        for (int j = 0; j < m.cols; ++j)
            for (const auto& [i, v] : m.columns[static_cast<std::size_t>(j)])
                add_entry(d, src[static_cast<std::size_t>(j)], dst[static_cast<std::size_t>(i)], v);
    }
}

GradedChainComplex ComplexBuilder::finish(std::string name, int window_min, int window_max) const
{
    GradedChainComplex c;
    c.name = std::move(name);
    c.window_min = window_min;
    c.window_max = window_max;
    for (const auto& [d, deg] : degrees_)
        if (!deg.labels.empty())
            c.basis[d] = deg.labels;
    for (const auto& [d, deg] : degrees_) {
        if (deg.labels.empty())
            continue;
        auto lower = degrees_.find(d - 1);
        int rows = lower == degrees_.end() ? 0 : static_cast<int>(lower->second.labels.size());
        SparseMatrix m(rows, static_cast<int>(deg.labels.size()));
        for (std::size_t j = 0; j < deg.columns.size(); ++j)
            for (const auto& [i, v] : deg.columns[j])
                m.columns[j].emplace_back(i, v);
        if (rows > 0)
            c.boundary[d] = std::move(m);
    }
    return c;
}

}  // namespace lsh

namespace lsh {

SparseMatrix ChainMap::block_at(const GradedChainComplex& source, const GradedChainComplex& target, int d) const
{
    auto it = blocks.find(d);
    if (it != blocks.end())
        return it->second;
    return SparseMatrix(static_cast<int>(target.dim(d)), static_cast<int>(source.dim(d)));
}

ChainMapBuilder::ChainMapBuilder(const GradedChainComplex& source, const GradedChainComplex& target)
    : source_(source), target_(target)
{
}

void ChainMapBuilder::add(int degree, const std::string& src, const std::string& dst, const Q& coeff)
{
    int j = source_.index_of(degree, src);
    int i = target_.index_of(degree, dst);
    if (j < 0 || i < 0)
        throw InputError("dimension mismatch: map entry " + src + " -> " + dst + " in degree " +
                         std::to_string(degree) + " has no matching basis element");
    auto& cols = columns_[degree];
    cols.resize(source_.dim(degree));
    cols[static_cast<std::size_t>(j)][i] += coeff;
}

ChainMap ChainMapBuilder::finish() const
{
    ChainMap f;
    for (const auto& [d, cols] : columns_) {
        SparseMatrix m(static_cast<int>(target_.dim(d)), static_cast<int>(source_.dim(d)));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, v] : cols[j])
                if (v != 0)
                    m.columns[j].emplace_back(i, v);
        f.blocks[d] = std::move(m);
    }
    return f;
}

ChainMapReport verify_chain_map(const GradedChainComplex& source, const GradedChainComplex& target,
                                const ChainMap& f, int lo, int hi)
{
    ChainMapReport r;
    for (int d = lo; d <= hi; ++d) {
        SparseMatrix lhs = multiply(f.block_at(source, target, d - 1), source.boundary_at(d));
        SparseMatrix rhs = multiply(target.boundary_at(d), f.block_at(source, target, d));
        std::size_t bad = 0;
        std::string first;
        for (int j = 0; j < lhs.cols; ++j)
            for (int i = 0; i < lhs.rows; ++i) {
                Q diff = lhs.at(i, j) - rhs.at(i, j);
                if (diff == 0)
                    continue;
                if (bad++ == 0)
                    first = source.basis_at(d)[static_cast<std::size_t>(j)] + " -> " +
                            target.basis_at(d - 1)[static_cast<std::size_t>(i)] + ": " + to_string(diff);
            }
        if (bad > 0) {
            r.ok = false;
            r.failing_degrees.push_back(d);
            r.defect_entries += bad;
            if (r.detail.empty())
                r.detail = "degree " + std::to_string(d) + ", " + first;
        }
    }
    return r;
}

}  // namespace lsh
