#include "skmaass/qform.hpp"

#include "skmaass/rayclass.hpp"

#include <algorithm>
#include <ostream>

namespace skm {

UnimodularMatrix::UnimodularMatrix(Int p, Int q, Int r, Int s)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s)) {
    if (p_ * s_ - q_ * r_ != 1)
        throw std::domain_error("UnimodularMatrix: determinant must be 1");
}

UnimodularMatrix UnimodularMatrix::identity() {
    return UnimodularMatrix(1, 0, 0, 1);
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
    return UnimodularMatrix(p_ * o.p_ + q_ * o.r_, p_ * o.q_ + q_ * o.s_,
                            r_ * o.p_ + s_ * o.r_, r_ * o.q_ + s_ * o.s_);
}

UnimodularMatrix UnimodularMatrix::inverse() const {
    return UnimodularMatrix(s_, -q_, -r_, p_);
}

UnimodularMatrix UnimodularMatrix::negated() const {
    return UnimodularMatrix(-p_, -q_, -r_, -s_);
}

bool UnimodularMatrix::in_gamma0_upper(const Int& n) const {
    return mpz_divisible_p(q_.get_mpz_t(), n.get_mpz_t());
}

std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& u) {
    return os << "[[" << u.p() << ", " << u.q() << "], [" << u.r() << ", " << u.s() << "]]";
}

QForm::QForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_ <= 0 || c_ <= 0 || b_ * b_ - 4 * a_ * c_ >= 0)
        throw std::domain_error("QForm: form must be positive definite");
}

Int QForm::content() const {
    Int g = gcd(a_, b_);
    return gcd(g, c_);
}

QForm QForm::transformed(const UnimodularMatrix& u) const {
    return transformed_general(*this, u.p(), u.q(), u.r(), u.s());
}

QForm QForm::scaled(const Int& l) const {
    if (l < 1)
        throw std::domain_error("QForm::scaled: factor must be positive");
    return QForm(a_ * l, b_ * l, c_ * l);
}

QForm QForm::divided(const Int& l) const {
    if (l < 1)
        throw std::domain_error("QForm::divided: divisor must be positive");
    if (!mpz_divisible_p(a_.get_mpz_t(), l.get_mpz_t()) ||
        !mpz_divisible_p(b_.get_mpz_t(), l.get_mpz_t()) ||
        !mpz_divisible_p(c_.get_mpz_t(), l.get_mpz_t()))
        throw std::domain_error("QForm::divided: entries not divisible");
    return QForm(a_ / l, b_ / l, c_ / l);
}

std::ostream& operator<<(std::ostream& os, const QForm& t) {
    return os << "(" << t.a() << ", " << t.b() << ", " << t.c() << ")";
}

QForm transformed_general(const QForm& t, const Int& x1, const Int& x2, const Int& x3,
                          const Int& x4) {
    /* columns of X carry the basis vectors; a' and c' are the values of the
     * form at the columns, b' twice the polarization */
    const Int a = t.a(), b = t.b(), c = t.c();
    Int na = a * x1 * x1 + b * x1 * x3 + c * x3 * x3;
    Int nc = a * x2 * x2 + b * x2 * x4 + c * x4 * x4;
    Int nb = 2 * a * x1 * x2 + b * (x1 * x4 + x2 * x3) + 2 * c * x3 * x4;
    return QForm(std::move(na), std::move(nb), std::move(nc));
}

FundamentalSplit split_discriminant(const Int& disc) {
    if (disc >= 0 || (mpz_fdiv_ui(disc.get_mpz_t(), 4) != 0 && mpz_fdiv_ui(disc.get_mpz_t(), 4) != 1))
        throw std::domain_error("split_discriminant: not a negative discriminant");
    Int squarefree = 1, half = 1;
    for (const auto& [p, e] : factor(-disc)) {
        if (e % 2)
            squarefree *= p;
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
        half *= pe;
    }
    Int d = -squarefree;
    Int conductor = half;
    if (mpz_fdiv_ui(d.get_mpz_t(), 4) != 1) {
        d *= 4;
        if (mpz_odd_p(conductor.get_mpz_t()))
            throw consistency_error("split_discriminant: internal parity failure");
        conductor /= 2;
    }
    if (d * conductor * conductor != disc)
        throw consistency_error("split_discriminant: reassembly failure");
    return {std::move(d), std::move(conductor)};
}

QForm s_of_d(const Int& d) {
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw std::domain_error("s_of_d: d must be a negative fundamental discriminant");
    if (mpz_fdiv_ui(d.get_mpz_t(), 4) == 0)
        return QForm(-d / 4, 0, 1);
    return QForm((1 - d) / 4, 1, 1);
}

bool is_reduced(const QForm& t) {
    const Int& a = t.a();
    const Int& b = t.b();
    const Int& c = t.c();
    if (abs(b) > a || a > c)
        return false;
    if ((abs(b) == a || a == c) && b < 0)
        return false;
    return true;
}

std::pair<QForm, UnimodularMatrix> reduce(const QForm& t) {
    Int a = t.a(), b = t.b(), c = t.c();
    UnimodularMatrix u = UnimodularMatrix::identity();
    while (true) {
        if (b > a || b <= -a) {
            /* translate b into (-a, a]; the shift is floor((a - b) / 2a) */
            Int shift, num = a - b, den = 2 * a;
            mpz_fdiv_q(shift.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            c += (a * shift + b) * shift;
            b += 2 * a * shift;
            u = u * UnimodularMatrix(1, shift, 0, 1);
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            u = u * UnimodularMatrix(0, -1, 1, 0);
            continue;
        }
        if (a == c && b < 0) {
            b = -b;
            u = u * UnimodularMatrix(0, -1, 1, 0);
        }
        break;
    }
    QForm r(a, b, c);
    if (!is_reduced(r) || t.transformed(u) != r)
        throw consistency_error("reduce: witness verification failed");
    return {std::move(r), std::move(u)};
}

std::vector<QForm> reduced_primitive_forms(const Int& disc) {
    const unsigned long m4 = mpz_fdiv_ui(disc.get_mpz_t(), 4);
    if (disc >= 0 || (m4 != 0 && m4 != 1))
        throw std::domain_error("reduced_primitive_forms: not a negative discriminant");
    std::vector<QForm> out;
    Int bound3 = -disc / 3, amax;
    mpz_sqrt(amax.get_mpz_t(), bound3.get_mpz_t());
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - disc;
            if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t()))
                continue;
            Int c = num / (4 * a);
            if (c < a)
                continue;
            if (a == c && b < 0)
                continue;
            if (gcd(gcd(a, b), c) != 1)
                continue;
            out.emplace_back(a, b, c);
        }
    }
    return out;
}

std::vector<UnimodularMatrix> automorphism_group(const QForm& t) {
    const Int l = t.content();
    const QForm t0 = t.divided(l);
    const auto [d, conductor] = split_discriminant(t0.disc());
    std::vector<UnimodularMatrix> out;
    out.push_back(UnimodularMatrix::identity());
    out.push_back(out.front().negated());
    if (conductor == 1 && d == -4) {
        /* order-4 rotation xi = [[b/2, c], [-a, -b/2]] of the primitive part */
        UnimodularMatrix xi(t0.b() / 2, t0.c(), -t0.a(), -t0.b() / 2);
        out.push_back(xi);
        out.push_back(xi.negated());
    } else if (conductor == 1 && d == -3) {
        /* order-6: +-(1/2 + xi), +-(-1/2 + xi); integral because b is odd */
        UnimodularMatrix ep((t0.b() + 1) / 2, t0.c(), -t0.a(), (1 - t0.b()) / 2);
        UnimodularMatrix em((t0.b() - 1) / 2, t0.c(), -t0.a(), (-1 - t0.b()) / 2);
        out.push_back(ep);
        out.push_back(ep.negated());
        out.push_back(em);
        out.push_back(em.negated());
    }
    for (const auto& g : out)
        if (t.transformed(g) != t)
            throw consistency_error("automorphism_group: candidate does not fix the form");
    return out;
}

std::optional<UnimodularMatrix> sl2_equivalent(const QForm& t1, const QForm& t2) {
    if (t1.disc() != t2.disc() || t1.content() != t2.content())
        return std::nullopt;
    auto [r1, u1] = reduce(t1);
    auto [r2, u2] = reduce(t2);
    if (r1 != r2)
        return std::nullopt;
    UnimodularMatrix w = u1 * u2.inverse();
    if (t1.transformed(w) != t2)
        throw consistency_error("sl2_equivalent: witness verification failed");
    return w;
}

std::optional<UnimodularMatrix> gamma0_equivalent(const QForm& t1, const QForm& t2, const Int& n) {
    if (n < 1)
        throw std::domain_error("gamma0_equivalent: level must be positive");
    if (t1.disc() != t2.disc() || t1.content() != t2.content())
        return std::nullopt;
    auto [r1, u1] = reduce(t1);
    auto [r2, u2] = reduce(t2);
    if (r1 != r2)
        return std::nullopt;
    /* any witness is u1 * e * u2^-1 for an automorph e of the reduced form */
    const UnimodularMatrix u2inv = u2.inverse();
    for (const auto& e : automorphism_group(r1)) {
        UnimodularMatrix w = u1 * e * u2inv;
        if (!w.in_gamma0_upper(n))
            continue;
        if (t1.transformed(w) != t2)
            throw consistency_error("gamma0_equivalent: witness verification failed");
        return w;
    }
    return std::nullopt;
}

Int gamma0_index(const Int& n) {
    if (n < 1)
        throw std::domain_error("gamma0_index: level must be positive");
    Int idx = 1;
    for (const auto& [p, e] : factor(n)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
        idx *= pe * (p + 1);
    }
    return idx;
}

std::vector<UnimodularMatrix> coset_reps_gamma0(const Int& n) {
    if (n < 1)
        throw std::domain_error("coset_reps_gamma0: level must be positive");
    std::vector<UnimodularMatrix> out;
    for (const Int& v : divisors(n)) {
        const Int mod = n / v;
        const Int shared = gcd(v, mod);
        for (Int u = 0; u < mod; ++u) {
            if (gcd(u, shared) != 1)
                continue;
            /* lift the residue u mod n/v to a value coprime to v */
            Int ulift = u;
            while (gcd(ulift, v) != 1)
                ulift += mod;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), ulift.get_mpz_t(),
                       v.get_mpz_t());
            /* second column (ulift, v); det = y v + x ulift = 1 */
            out.emplace_back(y, ulift, -x, v);
        }
    }
    if (Int(static_cast<unsigned long>(out.size())) != gamma0_index(n))
        throw consistency_error("coset_reps_gamma0: representative count mismatch");
    return out;
}

ClassSet enumerate_classes(const Int& d, const Int& m, const Int& l, const Int& n) {
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw std::domain_error("enumerate_classes: d must be a negative fundamental discriminant");
    if (m < 1 || l < 1 || n < 1)
        throw std::domain_error("enumerate_classes: m, l, n must be positive");
    const auto base = reduced_primitive_forms(d * m * m);
    const auto reps = coset_reps_gamma0(n);
    ClassSet cs{d, m, l, n, {}};
    for (const QForm& s : base) {
        const QForm ls = s.scaled(l);
        std::vector<QForm> kept;
        for (const auto& g : reps) {
            QForm cand = ls.transformed(g);
            bool dup = false;
            for (const QForm& k : kept) {
                if (gamma0_equivalent(k, cand, n)) {
                    dup = true;
                    break;
                }
            }
            if (!dup)
                kept.push_back(std::move(cand));
        }
        for (auto& k : kept)
            cs.representatives.push_back(std::move(k));
    }
    return cs;
}

Int count_classes_formula(const Int& d, const Int& m, const Int& l, const Int& n) {
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw std::domain_error(
            "count_classes_formula: d must be a negative fundamental discriminant");
    if (m < 1 || l < 1 || n < 1)
        throw std::domain_error("count_classes_formula: m, l, n must be positive");
    const Int psi = gamma0_index(n);
    if (m == 1 && d == -4) {
        Int num = psi + count_roots_minus_one(n);
        if (mpz_odd_p(num.get_mpz_t()))
            throw consistency_error("count_classes_formula: count not divisible by 2");
        return num / 2;
    }
    if (m == 1 && d == -3) {
        Int num = psi + 2 * count_roots_omega(n);
        if (!mpz_divisible_ui_p(num.get_mpz_t(), 3))
            throw consistency_error("count_classes_formula: count not divisible by 3");
        return num / 3;
    }
    Rat val = make_rat(class_number(d), u_of_d(d));
    val *= m;
    val *= psi;
    for (const auto& [p, e] : factor(m))
        val *= make_rat(p - kronecker(d, p), p);
    if (val.get_den() != 1)
        throw consistency_error("count_classes_formula: non-integral value");
    return val.get_num();
}

namespace {

/* 2x2 integer matrix with columns (a, c) and (b, d); used for lattice bases
 * in K = Q(sqrt(d)), elements written as (x, y) for (x + y sqrt(d))/2. */
struct Mat22 {
    Int a, b, c, d;
    Int det() const { return a * d - b * c; }
};

/* Z-basis of the span of the given (x, y) columns (rank 2 expected):
 * column-style Hermite reduction via gcd combinations. */
Mat22 lattice_basis(std::vector<std::pair<Int, Int>> gens) {
    /* first basis vector: gcd over the x-coordinates */
    std::pair<Int, Int> u{0, 0};
    for (auto& g : gens) {
        if (g.first == 0)
            continue;
        if (u.first == 0) {
            u = g;
            g = {0, 0};
            continue;
        }
        Int gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u.first.get_mpz_t(),
                   g.first.get_mpz_t());
        std::pair<Int, Int> nu{gg, s * u.second + t * g.second};
        /* keep the discarded direction inside the span: it has x = 0 */
        g = {0, (u.first / gg) * g.second - (g.first / gg) * u.second};
        u = nu;
    }
    if (u.first == 0)
        throw consistency_error("lattice_basis: rank < 2");
    Int y = 0;
    for (const auto& g : gens)
        if (g.second != 0)
            y = y == 0 ? Int(abs(g.second)) : Int(gcd(y, g.second));
    if (y == 0)
        throw consistency_error("lattice_basis: rank < 2");
    return Mat22{u.first, 0, u.second, y};
}

/* Smith reduction of c with ambient-basis tracking: row operations E on c
 * are mirrored as w -> w E^-1, so that span(w_old * c_old) stays equal to
 * Z d1 w1 + Z d2 w2 throughout.  Column operations need no mirror.  Returns
 * (d1, d2) with d1, d2 > 0 and d1 | d2. */
std::pair<Int, Int> smith_adapt(Mat22& c, Mat22& w) {
    for (int round = 0; round < 64; ++round) {
        if (c.a == 0) { /* swap rows of c, columns of w */
            std::swap(c.a, c.c);
            std::swap(c.b, c.d);
            std::swap(w.a, w.b);
            std::swap(w.c, w.d);
        }
        if (c.c != 0) { /* clear lower-left by a det-1 row combination */
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c.a.get_mpz_t(),
                       c.c.get_mpz_t());
            Int p = c.a / g, q = c.c / g;
            Mat22 nc{s * c.a + t * c.c, s * c.b + t * c.d, 0, -q * c.b + p * c.d};
            /* w *= E^-1 with E = [[s, t], [-q, p]] */
            Mat22 nw{w.a * p + w.b * q, -w.a * t + w.b * s, w.c * p + w.d * q,
                     -w.c * t + w.d * s};
            c = nc;
            w = nw;
        }
        if (c.b != 0) { /* clear upper-right by a column combination */
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c.a.get_mpz_t(),
                       c.b.get_mpz_t());
            Int p = c.a / g, q = c.b / g;
            c = Mat22{g, 0, s * c.c + t * c.d, -q * c.c + p * c.d};
            continue; /* may have reintroduced a lower-left entry */
        }
        if (c.c != 0)
            continue;
        /* diagonal; normalize signs (row scaling by -1 mirrors on w) */
        if (c.a < 0) {
            c.a = -c.a;
            w.a = -w.a;
            w.c = -w.c;
        }
        if (c.d < 0) {
            c.d = -c.d;
            w.b = -w.b;
            w.d = -w.d;
        }
        if (c.d % c.a != 0) { /* enforce d1 | d2 and rerun */
            c.c = c.d;
            continue;
        }
        return {c.a, c.d};
    }
    throw consistency_error("smith_adapt: no convergence");
}

/* The class-group avatar of the adelic map: for the ideal class of the
 * primitive form (A, B, *) of discriminant d (mn)^2 — a proper ideal
 * a = Z A + Z (-B + mn sqrt(d))/2 of the order of conductor mn — produce the
 * disc-d form attached to it, namely the norm form of a O_K on a basis
 * (v1, v2) with a O_K = Z v1 + Z v2 and a = Z mn v1 + Z v2, oriented
 * positively and divided by the ideal norm. */
QForm ideal_class_form(const Int& d, const Int& mn, const QForm& f) {
    const bool odd = mpz_odd_p(d.get_mpz_t());
    const Int big_a = f.a(), big_b = f.b();
    /* generators of a O_K: A, A theta, zeta, zeta theta with theta the
     * standard generator of O_K and zeta = (-B + mn sqrt(d))/2 */
    std::vector<std::pair<Int, Int>> gens;
    gens.emplace_back(2 * big_a, 0);
    if (odd)
        gens.emplace_back(big_a, big_a);
    else
        gens.emplace_back(0, big_a);
    gens.emplace_back(-big_b, mn);
    if (odd)
        gens.emplace_back((mn * d - big_b) / 2, (mn - big_b) / 2);
    else
        gens.emplace_back(mn * d / 2, -big_b / 2);

    Mat22 lam = lattice_basis(std::move(gens));
    /* index [a O_K : a] must equal the conductor mn */
    const Int vol_a = 2 * big_a * mn;
    const Int vol_lam = abs(lam.det());
    if (vol_lam == 0 || vol_a % vol_lam != 0 || vol_a / vol_lam != mn)
        throw consistency_error("ideal_class_form: wrong sublattice index");

    /* coordinates of the ideal basis in the basis of a O_K */
    const Mat22 g{2 * big_a, -big_b, 0, mn};
    const Int det = lam.det();
    Mat22 coord{lam.d * g.a - lam.b * g.c, lam.d * g.b - lam.b * g.d,
                -lam.c * g.a + lam.a * g.c, -lam.c * g.b + lam.a * g.d};
    for (Int* e : {&coord.a, &coord.b, &coord.c, &coord.d}) {
        if (*e % det != 0)
            throw consistency_error("ideal_class_form: non-integral coordinates");
        *e /= det;
    }
    auto [d1, d2] = smith_adapt(coord, lam);
    if (d1 != 1 || d2 != mn)
        throw consistency_error("ideal_class_form: quotient not cyclic of order mn");

    /* adapted basis: v1 = second column, v2 = first column; orient so the
     * determinant (x2 y1 - x1 y2)/2 — the ideal norm — is positive */
    Int x1 = lam.b, y1 = lam.d, x2 = lam.a, y2 = lam.c;
    Int nrm2 = x2 * y1 - x1 * y2; /* twice the norm */
    if (nrm2 == 0)
        throw consistency_error("ideal_class_form: degenerate basis");
    if (nrm2 < 0) {
        x1 = -x1;
        y1 = -y1;
        nrm2 = -nrm2;
    }
    /* norm form on (v1, v2), divided by the norm of the ideal */
    const Int num_a = x1 * x1 - d * y1 * y1;       /* 4 N(v1) */
    const Int num_b = x1 * x2 - d * y1 * y2;       /* 2 Tr(v1 conj(v2)) */
    const Int num_c = x2 * x2 - d * y2 * y2;       /* 4 N(v2) */
    if (num_a % (2 * nrm2) != 0 || num_b % nrm2 != 0 || num_c % (2 * nrm2) != 0)
        throw consistency_error("ideal_class_form: non-integral norm form");
    QForm s(num_a / (2 * nrm2), num_b / nrm2, num_c / (2 * nrm2));
    if (s.disc() != d || s.content() != 1)
        throw consistency_error("ideal_class_form: wrong discriminant or content");
    return s;
}

} // namespace

ClassSet h1_classes(const Int& d, const Int& m, const Int& l, const Int& n) {
    ClassSet all = enumerate_classes(d, m, l, n);
    std::vector<bool> hit(all.representatives.size(), false);
    /* one proper ideal class of the conductor-mn order per primitive form of
     * discriminant d (mn)^2 */
    const Int mn = m * n;
    const auto ideal_classes = reduced_primitive_forms(d * mn * mn);
    for (const QForm& f : ideal_classes) {
        const QForm s = ideal_class_form(d, mn, f);
        /* phi(c) = L diag(m, 1) S_c diag(m, 1) */
        const QForm cand = transformed_general(s, m, 0, 0, 1).scaled(l);
        bool found = false;
        for (std::size_t i = 0; i < all.representatives.size(); ++i) {
            if (gamma0_equivalent(all.representatives[i], cand, n)) {
                hit[i] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw consistency_error("h1_classes: image missed every class");
    }
    ClassSet out{d, m, l, n, {}};
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (hit[i])
            out.representatives.push_back(all.representatives[i]);
    /* the map is injective on ideal classes of conductor mn, so the image
     * size must equal the ray class number — and the number of ideal
     * classes fed in */
    const Int expected = raycl_size(d, mn);
    if (Int(static_cast<unsigned long>(out.representatives.size())) != expected ||
        out.representatives.size() != ideal_classes.size())
        throw consistency_error("h1_classes: class count " +
                                std::to_string(out.representatives.size()) +
                                " != ray class number " + expected.get_str());
    return out;
}

bool is_phi_surjective(const Int& d, const Int& m, const Int& n) {
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw std::domain_error("is_phi_surjective: d must be a negative fundamental discriminant");
    if (m < 1 || n < 1)
        throw std::domain_error("is_phi_surjective: m, n must be positive");
    const Int dm2 = d * m * m;
    for (const auto& [p, e] : factor(n))
        if (kronecker(dm2, p) != -1)
            return false;
    return true;
}

} // namespace skm
