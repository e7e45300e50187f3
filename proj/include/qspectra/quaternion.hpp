#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <vector>

#include "qspectra/errors.hpp"

namespace qspectra {

namespace tol {
/// Default tolerance for recognizing imaginary units.
inline constexpr double unit = 1e-10;
/// Default tolerance for 2-sphere membership tests.
inline constexpr double sphere = 1e-9;
}  // namespace tol

/// One element of the quaternion division algebra, q = w + x*i + y*j + z*k.
template <typename Scalar = double>
struct Quaternion {
    Scalar w{0}, x{0}, y{0}, z{0};

    constexpr Quaternion() = default;
    constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(Scalar real) : w(real) {}  // NOLINT(google-explicit-constructor)

    static constexpr Quaternion zero() { return {0, 0, 0, 0}; }
    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion unit_i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion unit_j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion unit_k() { return {0, 0, 0, 1}; }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    // Hamilton product, i*j = k.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr Quaternion operator*(Scalar s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(Scalar s) const { return {w / s, x / s, y / s, z / s}; }
    friend constexpr Quaternion operator*(Scalar s, const Quaternion& q) { return q * s; }

    Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
    Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

    constexpr Scalar re() const { return w; }
    constexpr Quaternion im() const { return {0, x, y, z}; }
    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    constexpr Scalar squared_norm() const { return w * w + x * x + y * y + z * z; }
    Scalar norm() const { return std::sqrt(squared_norm()); }

    Quaternion inverse() const {
        const Scalar n2 = squared_norm();
        if (n2 <= Scalar(0)) throw DivisionByZero{};
        return conj() / n2;
    }

    Quaternion operator/(const Quaternion& o) const { return *this * o.inverse(); }

    bool is_imaginary_unit(Scalar tolerance = Scalar(tol::unit)) const {
        return std::abs(w) <= tolerance && std::abs(norm() - Scalar(1)) <= tolerance;
    }

    bool operator==(const Quaternion&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
    }
};

template <typename Scalar>
Quaternion<Scalar> conj(const Quaternion<Scalar>& q) {
    return q.conj();
}

template <typename Scalar>
Scalar abs(const Quaternion<Scalar>& q) {
    return q.norm();
}

/// alpha + unit*beta in the closed upper slice half-plane (beta >= 0).
template <typename Scalar = double>
struct SlicePoint {
    Scalar alpha{0};
    Scalar beta{0};
    Quaternion<Scalar> unit = Quaternion<Scalar>::unit_i();

    Quaternion<Scalar> value() const { return Quaternion<Scalar>(alpha) + unit * beta; }
};

/// Splits q = alpha + unit*beta with beta = |Im q| >= 0; real points take the
/// supplied default unit.
template <typename Scalar>
SlicePoint<Scalar> slice_form(const Quaternion<Scalar>& q, const Quaternion<Scalar>& default_unit,
                              Scalar unit_tol = Scalar(tol::unit)) {
    if (!default_unit.is_imaginary_unit(unit_tol)) throw BadAuxiliaryUnit{};
    const Quaternion<Scalar> imag = q.im();
    const Scalar beta = imag.norm();
    if (beta > Scalar(0)) return {q.re(), beta, imag / beta};
    return {q.re(), Scalar(0), default_unit};
}

/// Membership of p and q in the same 2-sphere S_q (equal real part and norm).
template <typename Scalar>
bool sphere_equivalent(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q, Scalar tolerance) {
    return std::abs(p.re() - q.re()) <= tolerance && std::abs(p.norm() - q.norm()) <= tolerance;
}

/// Circularization of a finite planar set: the union of the 2-spheres through
/// its points. Membership testing delegates to sphere_equivalent.
template <typename Scalar = double>
struct CircularSet {
    std::vector<SlicePoint<Scalar>> generators;

    bool contains(const Quaternion<Scalar>& q, Scalar tolerance = Scalar(tol::sphere)) const {
        for (const auto& g : generators)
            if (sphere_equivalent(q, g.value(), tolerance)) return true;
        return false;
    }
    bool empty() const { return generators.empty(); }
};

template <typename Scalar>
CircularSet<Scalar> circularize(const std::vector<SlicePoint<Scalar>>& points) {
    return CircularSet<Scalar>{points};
}

/// Complex coordinates of q relative to the slice plane C_unit: q = a + b*unit + wedge.
template <typename Scalar>
std::complex<Scalar> slice_component(const Quaternion<Scalar>& q, const Quaternion<Scalar>& unit) {
    return {q.re(), -(unit * q).re()};
}

/// The part of q orthogonal to the slice plane C_unit.
template <typename Scalar>
Quaternion<Scalar> wedge_component(const Quaternion<Scalar>& q, const Quaternion<Scalar>& unit) {
    const std::complex<Scalar> c = slice_component(q, unit);
    return q - Quaternion<Scalar>(c.real()) - unit * c.imag();
}

/// Embeds a complex number into the slice plane C_unit.
template <typename Scalar>
Quaternion<Scalar> from_slice(const std::complex<Scalar>& c, const Quaternion<Scalar>& unit) {
    return Quaternion<Scalar>(c.real()) + unit * c.imag();
}

/// A deterministic imaginary unit orthogonal to `unit` (anticommuting with it).
template <typename Scalar>
Quaternion<Scalar> orthogonal_unit(const Quaternion<Scalar>& unit) {
    // Start from the canonical axis least aligned with the given unit.
    const Scalar ax = std::abs(unit.x), ay = std::abs(unit.y), az = std::abs(unit.z);
    Quaternion<Scalar> seed = Quaternion<Scalar>::unit_j();
    if (ax <= ay && ax <= az)
        seed = Quaternion<Scalar>::unit_i();
    else if (az <= ax && az <= ay)
        seed = Quaternion<Scalar>::unit_k();
    // Gram-Schmidt in the imaginary 3-space.
    const Scalar dot = seed.x * unit.x + seed.y * unit.y + seed.z * unit.z;
    Quaternion<Scalar> res = seed - unit * dot;
    res.w = 0;
    return res / res.norm();
}

using Quat = Quaternion<double>;

}  // namespace qspectra
