#pragma once

#include <complex>
#include <vector>

namespace knotbeta {

/// Dense polynomial in the exponent variable s, real coefficients.
class SPoly {
public:
    SPoly() = default;
    explicit SPoly(double c0) : coef_{c0} {}
    static SPoly variable() { return SPoly(std::vector<double>{0.0, 1.0}); }
    explicit SPoly(std::vector<double> coef) : coef_(std::move(coef)) { trim(); }

    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    double coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coef_.size()) ? coef_[k] : 0.0;
    }

    double eval(double s) const {
        double acc = 0.0;
        for (std::size_t k = coef_.size(); k-- > 0;) acc = acc * s + coef_[k];
        return acc;
    }
    std::complex<double> eval(const std::complex<double>& s) const {
        std::complex<double> acc = 0.0;
        for (std::size_t k = coef_.size(); k-- > 0;) acc = acc * s + coef_[k];
        return acc;
    }

    SPoly& operator+=(const SPoly& o) {
        if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), 0.0);
        for (std::size_t k = 0; k < o.coef_.size(); ++k) coef_[k] += o.coef_[k];
        trim();
        return *this;
    }
    SPoly& operator-=(const SPoly& o) {
        if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), 0.0);
        for (std::size_t k = 0; k < o.coef_.size(); ++k) coef_[k] -= o.coef_[k];
        trim();
        return *this;
    }
    SPoly& operator*=(double c) {
        for (auto& v : coef_) v *= c;
        trim();
        return *this;
    }

    friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
    friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
    friend SPoly operator*(SPoly a, double c) { return a *= c; }
    friend SPoly operator*(double c, SPoly a) { return a *= c; }

    friend SPoly operator*(const SPoly& a, const SPoly& b) {
        if (a.coef_.empty() || b.coef_.empty()) return SPoly{};
        std::vector<double> out(a.coef_.size() + b.coef_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coef_.size(); ++i)
            for (std::size_t j = 0; j < b.coef_.size(); ++j) out[i + j] += a.coef_[i] * b.coef_[j];
        return SPoly(std::move(out));
    }

private:
    void trim() {
        while (!coef_.empty() && coef_.back() == 0.0) coef_.pop_back();
    }
    std::vector<double> coef_; // coef_[k] multiplies s^k
};

} // namespace knotbeta
