#pragma once

#include "prepchi/freealg.hpp"
#include "prepchi/quiver.hpp"
#include "prepchi/subspace.hpp"

#include <string>

namespace prepchi {

template <class K>
K field_one(const FieldSpec& field);

template <>
inline Rational field_one<Rational>(const FieldSpec&) {
    return Rational(1);
}
template <>
inline Fp field_one<Fp>(const FieldSpec& field) {
    if (field.is_rational()) throw std::invalid_argument("field_one<Fp>: prime field required");
    return Fp(1, field.characteristic);
}

/// Nilpotent representation of the preprojective algebra: a space per vertex
/// and a matrix per arrow of the doubled quiver, shape dims(t(h)) x dims(s(h)).
template <class K>
struct LambdaModule {
    QuiverGraph graph;
    FieldSpec field;
    std::map<int, int> dims;
    std::map<std::string, Matrix<K>> maps;  // keyed by arrow id

    int dim(int v) const {
        auto it = dims.find(v);
        return it == dims.end() ? 0 : it->second;
    }
    int total_dim() const {
        int t = 0;
        for (auto [v, d] : dims) t += d;
        return t;
    }
    const Matrix<K>& map(const std::string& id) const {
        auto it = maps.find(id);
        if (it == maps.end()) throw std::invalid_argument("module: missing map for arrow " + id);
        return it->second;
    }
    K one() const { return field_one<K>(field); }
};

template <class K>
WeightVector dimvec(const LambdaModule<K>& m) {
    WeightVector nu;
    for (auto [v, d] : m.dims) nu.add(v, d);
    return nu;
}

template <class K>
LambdaModule<K> simple_module(const QuiverGraph& g, const FieldSpec& field, int vertex) {
    LambdaModule<K> m;
    m.graph = g;
    m.field = field;
    for (int v : g.vertices) m.dims[v] = (v == vertex) ? 1 : 0;
    for (const Arrow& h : g.arrows)
        m.maps[h.id] = Matrix<K>(m.dims[h.target], m.dims[h.source]);
    return m;
}

template <class K>
LambdaModule<K> zero_module(const QuiverGraph& g, const FieldSpec& field) {
    LambdaModule<K> m;
    m.graph = g;
    m.field = field;
    for (int v : g.vertices) m.dims[v] = 0;
    for (const Arrow& h : g.arrows) m.maps[h.id] = Matrix<K>(0, 0);
    return m;
}

template <class K>
LambdaModule<K> direct_sum(const LambdaModule<K>& a, const LambdaModule<K>& b) {
    LambdaModule<K> m;
    m.graph = a.graph;
    m.field = a.field;
    for (int v : m.graph.vertices) m.dims[v] = a.dim(v) + b.dim(v);
    for (const Arrow& h : m.graph.arrows) {
        Matrix<K> blk(m.dims[h.target], m.dims[h.source]);
        const Matrix<K>& ma = a.map(h.id);
        const Matrix<K>& mb = b.map(h.id);
        for (int i = 0; i < ma.rows; ++i)
            for (int j = 0; j < ma.cols; ++j) blk.at(i, j) = ma.at(i, j);
        for (int i = 0; i < mb.rows; ++i)
            for (int j = 0; j < mb.cols; ++j) blk.at(ma.rows + i, ma.cols + j) = mb.at(i, j);
        m.maps[h.id] = std::move(blk);
    }
    return m;
}

struct ValidationReport {
    bool ok = true;
    std::string message;
};

/// Checks matrix shapes, the preprojective relation at every vertex, and
/// nilpotency of the radical chain.
template <class K>
ValidationReport validate_module(const LambdaModule<K>& m) {
    for (const Arrow& h : m.graph.arrows) {
        const Matrix<K>& mat = m.map(h.id);
        if (mat.rows != m.dim(h.target) || mat.cols != m.dim(h.source))
            return {false, "shape mismatch on arrow " + h.id};
    }
    for (int i : m.graph.vertices) {
        Matrix<K> rel(m.dim(i), m.dim(i));
        for (const Arrow& h : m.graph.arrows) {
            if (h.source != i) continue;
            Matrix<K> term = m.map(m.graph.arrows[h.partner].id) * m.map(h.id);
            rel = rel + (h.eps > 0 ? term : term.scaled(-m.one()));
        }
        if (!rel.is_zero_matrix())
            return {false, "preprojective relation fails at vertex " + std::to_string(i)};
    }
    // radical chain: N_{k+1} = sum over arrows of M_h(N_k at the source)
    std::map<int, Subspace<K>> chain;
    for (int v : m.graph.vertices) chain[v] = Subspace<K>::full(m.dim(v), m.one());
    int steps = m.total_dim() + 1;
    for (int k = 0; k < steps; ++k) {
        bool all_zero = true;
        for (auto& [v, s] : chain) all_zero = all_zero && s.dim() == 0;
        if (all_zero) return {true, ""};
        std::map<int, Subspace<K>> next;
        for (int v : m.graph.vertices) next[v] = Subspace<K>::zero(m.dim(v));
        for (const Arrow& h : m.graph.arrows) {
            const Subspace<K>& src = chain[h.source];
            if (src.dim() == 0) continue;
            next[h.target] = sum(next[h.target], image(m.map(h.id) * src.basis.transposed()));
        }
        chain = std::move(next);
    }
    return {false, "not nilpotent"};
}

/// The local presentation tilde(M)_i -> M_i -> tilde(M)_i at a vertex, with
/// the fixed block order: arrows out of i sorted by (target vertex, arrow id).
template <class K>
struct VertexLocalData {
    int vertex = 0;
    std::vector<std::string> arrow_order;  // arrows h with s(h) = i
    std::vector<int> block_offset;         // offset of each block in tilde
    int tilde_dim = 0;
    Matrix<K> m_in;   // tilde -> M_i, blocks M_{h*}
    Matrix<K> m_out;  // M_i -> tilde, blocks eps(h) M_h
    Matrix<K> x;      // m_out * m_in
};

template <class K>
VertexLocalData<K> local_data(const LambdaModule<K>& m, int i) {
    VertexLocalData<K> d;
    d.vertex = i;
    std::vector<const Arrow*> out;
    for (const Arrow& h : m.graph.arrows)
        if (h.source == i) out.push_back(&h);
    std::sort(out.begin(), out.end(), [](const Arrow* a, const Arrow* b) {
        return std::pair(a->target, a->id) < std::pair(b->target, b->id);
    });
    std::vector<Matrix<K>> in_blocks, out_blocks;
    for (const Arrow* h : out) {
        d.arrow_order.push_back(h->id);
        d.block_offset.push_back(d.tilde_dim);
        d.tilde_dim += m.dim(h->target);
        in_blocks.push_back(m.map(m.graph.arrows[h->partner].id));
        const Matrix<K>& mh = m.map(h->id);
        out_blocks.push_back(h->eps > 0 ? mh : mh.scaled(-m.one()));
    }
    d.m_in = hcat(in_blocks, m.dim(i));
    d.m_out = vcat(out_blocks, m.dim(i));
    d.x = d.m_out * d.m_in;
    if (!(d.m_in * d.m_out).is_zero_matrix())
        throw std::logic_error("local_data: m_in * m_out != 0 (invalid module)");
    return d;
}

/// (dim coker M_in(i), dim ker M_out(i)).
template <class K>
std::pair<int, int> phi_stats(const LambdaModule<K>& m, int i) {
    VertexLocalData<K> d = local_data(m, i);
    return {m.dim(i) - rank(d.m_in), m.dim(i) - rank(d.m_out)};
}

/// Reflection functor: replaces M_i by coker(m_out), with the new in-map the
/// canonical projection and the new out-map induced by m_in. The cokernel is
/// realized on the non-pivot coordinates of im(m_out), so the result is
/// deterministic on the nose.
template <class K>
LambdaModule<K> sigma_star(const LambdaModule<K>& m, int i) {
    VertexLocalData<K> d = local_data(m, i);
    Subspace<K> im_out = image(d.m_out);
    Matrix<K> proj = quotient_matrix(im_out, m.one());   // tilde -> coker
    Matrix<K> sect = section_matrix(im_out, m.one());    // coker -> tilde
    Matrix<K> new_out = d.x * sect;                      // coker -> tilde
    int new_dim = d.tilde_dim - im_out.dim();

    LambdaModule<K> r = m;
    r.dims[i] = new_dim;
    for (size_t b = 0; b < d.arrow_order.size(); ++b) {
        const Arrow& h = m.graph.arrow_by_id(d.arrow_order[b]);
        int off = d.block_offset[b];
        int bd = m.dim(h.target);
        // new arrow into i: block of the projection
        Matrix<K> blk_in(new_dim, bd);
        for (int a = 0; a < new_dim; ++a)
            for (int c = 0; c < bd; ++c) blk_in.at(a, c) = proj.at(a, off + c);
        r.maps[m.graph.arrows[h.partner].id] = std::move(blk_in);
        // new arrow out of i: block of new_out, undoing the eps scaling
        Matrix<K> blk_out(bd, new_dim);
        for (int a = 0; a < bd; ++a)
            for (int c = 0; c < new_dim; ++c)
                blk_out.at(a, c) =
                    h.eps > 0 ? new_out.at(off + a, c) : -new_out.at(off + a, c);
        r.maps[h.id] = std::move(blk_out);
    }
    return r;
}

/// Vertex-wise base change: M_h becomes P_{t(h)} M_h P_{s(h)}^{-1}.
template <class K>
LambdaModule<K> conjugate(const LambdaModule<K>& m, const std::map<int, Matrix<K>>& change) {
    std::map<int, Matrix<K>> inv;
    for (const auto& [v, p] : change) {
        auto pi = inverse(p, m.one());
        if (!pi) throw std::invalid_argument("conjugate: singular base change at vertex " +
                                             std::to_string(v));
        inv[v] = *pi;
    }
    LambdaModule<K> r = m;
    for (const Arrow& h : m.graph.arrows) {
        Matrix<K> mh = m.map(h.id);
        if (auto it = change.find(h.target); it != change.end()) mh = it->second * mh;
        if (auto it = inv.find(h.source); it != inv.end()) mh = mh * it->second;
        r.maps[h.id] = std::move(mh);
    }
    return r;
}

/// Reduce a rational module mod p. Throws on denominator collision.
inline LambdaModule<Fp> reduce_mod(const LambdaModule<Rational>& m, std::uint64_t p) {
    LambdaModule<Fp> r;
    r.graph = m.graph;
    r.field = FieldSpec::prime(p);
    r.dims = m.dims;
    for (const auto& [id, mat] : m.maps) {
        Matrix<Fp> f(mat.rows, mat.cols);
        for (size_t i = 0; i < mat.data.size(); ++i) f.data[i] = reduce_mod(mat.data[i], p);
        r.maps[id] = std::move(f);
    }
    return r;
}

/// Denominators appearing in the module's matrices (for prime selection).
inline std::vector<std::uint64_t> denominator_primes(const LambdaModule<Rational>& m) {
    std::vector<std::uint64_t> bad;
    for (const auto& [id, mat] : m.maps)
        for (const Rational& x : mat.data) {
            Integer den = boost::multiprecision::denominator(x);
            for (std::uint64_t p = 2; Integer(p) <= den; ++p)
                if (is_prime(p) && den % Integer(p) == 0) {
                    bad.push_back(p);
                    while (den % Integer(p) == 0) den /= Integer(p);
                }
        }
    return bad;
}

}  // namespace prepchi
