#pragma once

#include "wsuper/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wsuper {

// Prime field element. The modulus travels with the value; literals built
// from plain integers carry modulus 0 ("unbound") and adopt the modulus of
// the other operand, so generic field code can say K(1) and K(0).
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(long v) : v_(v), p_(0) {}
    Fp(int v) : v_(v), p_(0) {}
    Fp(long v, long p) : v_(v), p_(p) { normalize(); }

    static Fp from_rat(const Rat& r, long p) {
        mpz_class den = r.den();
        mpz_class pz(static_cast<signed long>(p));
        mpz_class deninv;
        if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw std::domain_error("Fp::from_rat: denominator " + den.get_str() +
                                    " not invertible mod " + std::to_string(p));
        mpz_class r2 = (r.num() % pz) * deninv % pz;
        long v = r2.get_si();
        return Fp(v, p);
    }

    long value() const { return v_; }
    long modulus() const { return p_; }
    bool is_zero() const { return norm_val() == 0; }
    std::string str() const { return std::to_string(norm_val()); }

    Fp operator-() const { return Fp(-v_, p_); }
    Fp& operator+=(const Fp& o) { bind(o); v_ += o.v_; normalize(); return *this; }
    Fp& operator-=(const Fp& o) { bind(o); v_ -= o.v_; normalize(); return *this; }
    Fp& operator*=(const Fp& o) { bind(o); v_ *= o.v_; normalize(); return *this; }
    Fp& operator/=(const Fp& o) {
        Fp ob = o;
        if (ob.p_ == 0 && p_ != 0) ob = Fp(o.v_, p_);
        return *this *= ob.inv();
    }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) {
        if (a.p_ && b.p_ && a.p_ != b.p_) throw std::logic_error("Fp: modulus mismatch");
        long p = a.p_ ? a.p_ : b.p_;
        if (!p) return a.v_ == b.v_;
        long x = ((a.v_ % p) + p) % p, y = ((b.v_ % p) + p) % p;
        return x == y;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inv() const {
        if (p_ == 0) {
            if (v_ == 1) return Fp(1);
            if (v_ == -1) return Fp(-1);
            throw std::logic_error("Fp::inv on unbound value");
        }
        long val = norm_val();
        if (val == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid
        long a = val, b = p_, x0 = 1, x1 = 0;
        while (b) {
            long q = a / b;
            long t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Fp(x0, p_);
    }

private:
    void bind(const Fp& o) {
        if (p_ == 0) p_ = o.p_;
        else if (o.p_ != 0 && o.p_ != p_) throw std::logic_error("Fp: modulus mismatch");
        normalize();
    }
    void normalize() {
        if (p_) { v_ %= p_; if (v_ < 0) v_ += p_; }
    }
    long norm_val() const {
        if (!p_) return v_;
        long x = v_ % p_;
        return x < 0 ? x + p_ : x;
    }

    long v_;
    long p_;
};

inline std::string to_string(const Fp& x) { return x.str(); }

// Quadratic extension Q(sqrt(q)): values a + b*sqrt(q). q is carried with
// the value (0 = plain rational) and must agree between bound operands.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), q_(0) {}
    QuadExt(long n) : a_(n), b_(0), q_(0) {}
    QuadExt(int n) : a_(n), b_(0), q_(0) {}
    QuadExt(Rat a) : a_(std::move(a)), b_(0), q_(0) {}
    QuadExt(Rat a, Rat b, Rat q) : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
        if (b_.is_zero()) q_ = Rat(0);
    }
    static QuadExt sqrt_of(const Rat& q) { return QuadExt(Rat(0), Rat(1), q); }

    const Rat& rational_part() const { return a_; }
    const Rat& radical_part() const { return b_; }
    const Rat& radicand() const { return q_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s = a_.is_zero() ? "" : a_.str() + "+";
        return s + "(" + b_.str() + ")*sqrt(" + q_.str() + ")";
    }

    QuadExt operator-() const { return QuadExt(-a_, -b_, q_); }
    QuadExt& operator+=(const QuadExt& o) { bind(o); a_ += o.a_; b_ += o.b_; fix(); return *this; }
    QuadExt& operator-=(const QuadExt& o) { bind(o); a_ -= o.a_; b_ -= o.b_; fix(); return *this; }
    QuadExt& operator*=(const QuadExt& o) {
        bind(o);
        Rat q = q_.is_zero() ? o.q_ : q_;
        Rat a = a_ * o.a_ + b_ * o.b_ * q;
        Rat b = a_ * o.b_ + b_ * o.a_;
        a_ = a; b_ = b; q_ = q; fix();
        return *this;
    }
    QuadExt& operator/=(const QuadExt& o) { return *this *= o.inv(); }

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.a_ == b.a_ && a.b_ == b.b_ &&
               (a.b_.is_zero() || a.q_ == b.q_);
    }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

    QuadExt inv() const {
        if (is_zero()) throw std::domain_error("QuadExt: inverse of zero");
        // (a + b s)^-1 = (a - b s) / (a^2 - b^2 q)
        Rat n = a_ * a_ - b_ * b_ * q_;
        if (n.is_zero()) throw std::domain_error("QuadExt: radicand is a square, not a field");
        return QuadExt(a_ / n, -b_ / n, q_);
    }

private:
    void bind(const QuadExt& o) {
        if (q_.is_zero()) q_ = o.q_;
        else if (!o.q_.is_zero() && o.q_ != q_)
            throw std::logic_error("QuadExt: mixed radicands");
    }
    void fix() { if (b_.is_zero()) q_ = Rat(0); }

    Rat a_, b_, q_;
};

inline std::string to_string(const QuadExt& x) { return x.str(); }

// Field glue used by templated code.
template <class K> struct FieldIO;

template <> struct FieldIO<Rat> {
    static Rat from_rat(const Rat& r) { return r; }
    static std::string name() { return "Q"; }
};
template <> struct FieldIO<Fp> {
    // modulus supplied by context objects, see PBWContext / ModularAlgebra
    static std::string name() { return "Fp"; }
};
template <> struct FieldIO<QuadExt> {
    static QuadExt from_rat(const Rat& r) { return QuadExt(r); }
    static std::string name() { return "Q(sqrt)"; }
};

} // namespace wsuper
