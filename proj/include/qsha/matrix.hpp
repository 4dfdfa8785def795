#pragma once

#include <vector>

#include <qsha/error.hpp>
#include <qsha/rational.hpp>

namespace qsha {

/// Dense matrix over the rationals. Small and exact; no attempt at speed.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
        if (rows < 0 || cols < 0) throw StructuralError("negative matrix dimension");
    }

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int r, int c) { return data_[index(r, c)]; }
    const Rational& operator()(int r, int c) const { return data_[index(r, c)]; }

    bool is_zero() const {
        for (const Rational& x : data_)
            if (x != 0) return false;
        return true;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Rational trace() const {
        if (rows_ != cols_) throw StructuralError("trace of a non-square matrix");
        Rational t(0);
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
        a.require_same_shape(b);
        QMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b) {
        a.require_same_shape(b);
        QMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }
    friend QMatrix operator*(const Rational& s, const QMatrix& a) {
        QMatrix c = a;
        for (Rational& x : c.data_) x *= s;
        return c;
    }
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw StructuralError("matrix shape mismatch in product");
        QMatrix c(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& ark = a(r, k);
                if (ark == 0) continue;
                for (int s = 0; s < b.cols_; ++s) c(r, s) += ark * b(k, s);
            }
        return c;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw StructuralError("matrix index out of range");
        return static_cast<std::size_t>(r) * cols_ + c;
    }
    void require_same_shape(const QMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw StructuralError("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

} // namespace qsha
