#include <flagalg/matrix.hpp>

namespace flagalg {

int rank_bareiss(const ExactMatrix<Rational>& m)
{
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (int i = 0; i < rows; ++i) {
        Integer l = 1;
        for (int j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < cols; ++j) {
            Rational s = m(i, j) * l;
            a[i][j] = s.get_num();
        }
    }
    Integer prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

std::optional<std::vector<Rational>> solve_bareiss(const ExactMatrix<Rational>& m, const std::vector<Rational>& b)
{
    int n = m.rows();
    if (m.cols() != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_bareiss: square system required");
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n + 1));
    for (int i = 0; i < n; ++i) {
        Integer l = b[i].get_den();
        for (int j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < n; ++j)
            a[i][j] = Rational(m(i, j) * l).get_num();
        a[i][n] = Rational(b[i] * l).get_num();
    }
    Integer prev = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0)
            return std::nullopt;
        std::swap(a[p], a[c]);
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j <= n; ++j) {
                Integer t = a[c][c] * a[i][j] - a[i][c] * a[c][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    std::vector<Rational> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rational s = a[i][n];
        for (int j = i + 1; j < n; ++j)
            s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace flagalg
