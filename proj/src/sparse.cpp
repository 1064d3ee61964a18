#include "perihom/sparse.hpp"

#include <algorithm>

namespace perihom {

void SparseSymMatrix::mul(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        double yi = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            const int j = cols[static_cast<std::size_t>(k)];
            const double v = vals[static_cast<std::size_t>(k)];
            yi += v * x[static_cast<std::size_t>(j)];
            if (j != i) y[static_cast<std::size_t>(j)] += v * xi;
        }
        y[static_cast<std::size_t>(i)] += yi;
    }
}

std::vector<double> SparseSymMatrix::mul(const std::vector<double>& x) const {
    std::vector<double> y;
    mul(x, y);
    return y;
}

std::vector<double> SparseSymMatrix::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (cols[static_cast<std::size_t>(k)] == i) d[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(k)];
    return d;
}

DenseMatrix SparseSymMatrix::to_dense() const {
    DenseMatrix d(n);
    for (int i = 0; i < n; ++i) {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            const int j = cols[static_cast<std::size_t>(k)];
            d(i, j) += vals[static_cast<std::size_t>(k)];
            if (j != i) d(j, i) += vals[static_cast<std::size_t>(k)];
        }
    }
    return d;
}

SparseSymMatrix TripletBuffer::build() const {
    std::vector<Entry> sorted = entries;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
        return a.row < b.row || (a.row == b.row && a.col < b.col);
    });

    SparseSymMatrix m;
    m.n = n;
    m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t k = 0; k < sorted.size();) {
        std::size_t j = k;
        double sum = 0.0;
        while (j < sorted.size() && sorted[j].row == sorted[k].row && sorted[j].col == sorted[k].col) {
            sum += sorted[j].val;
            ++j;
        }
        m.cols.push_back(sorted[k].col);
        m.vals.push_back(sum);
        m.row_ptr[static_cast<std::size_t>(sorted[k].row) + 1] += 1;
        k = j;
    }
    for (int i = 0; i < n; ++i) m.row_ptr[static_cast<std::size_t>(i) + 1] += m.row_ptr[static_cast<std::size_t>(i)];
    return m;
}

}  // namespace perihom
