#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: correctness over speed.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

// exhaustive k nearest neighbors, ties by lower index
inline std::vector<std::vector<Eigen::Index>> brute_knn(const Eigen::MatrixXd& x, int k) {
    const Eigen::Index n = x.rows();
    std::vector<std::vector<Eigen::Index>> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<std::pair<double, Eigen::Index>> cand;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            cand.emplace_back((x.row(i) - x.row(j)).norm(), j);
        }
        std::sort(cand.begin(), cand.end());
        auto& nb = out[static_cast<std::size_t>(i)];
        for (int m = 0; m < k; ++m) nb.push_back(cand[static_cast<std::size_t>(m)].second);
        std::sort(nb.begin(), nb.end());
    }
    return out;
}

// truncated Neumann series sum_{m=0..terms} (tA)^m
inline Eigen::MatrixXd neumann_series(const Eigen::MatrixXd& a, double t, int terms) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    for (int m = 1; m <= terms; ++m) {
        power = t * (power * a);
        sum += power;
    }
    return sum;
}

// average ranks for ties
inline std::vector<double> ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t m = i; m <= j; ++m) r[idx[m]] = avg;
        i = j + 1;
    }
    return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0 || vy == 0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

// O(n^3) Hungarian algorithm, minimum-cost perfect matching on a square cost
// matrix; returns total cost
inline double hungarian_cost(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0), v(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> match(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, false);
        std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const int i0 = match[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0;
    for (int j = 1; j <= n; ++j) total += cost(match[static_cast<std::size_t>(j)] - 1, j - 1);
    return total;
}

// plain k-NN classifier on explicit train rows; ties broken like the library
// (distance ties by lower train index, vote ties by lowest class id)
inline int knn_vote(const Eigen::MatrixXd& train, const std::vector<int>& labels,
                    const Eigen::RowVectorXd& query, int k) {
    std::vector<std::pair<double, Eigen::Index>> cand;
    for (Eigen::Index i = 0; i < train.rows(); ++i)
        cand.emplace_back((train.row(i) - query).norm(), i);
    const int kk = std::min<int>(k, static_cast<int>(cand.size()));
    std::partial_sort(cand.begin(), cand.begin() + kk, cand.end());
    std::vector<int> votes;
    for (int m = 0; m < kk; ++m) {
        const int c = labels[static_cast<std::size_t>(cand[static_cast<std::size_t>(m)].second)];
        if (c >= static_cast<int>(votes.size())) votes.resize(static_cast<std::size_t>(c) + 1, 0);
        ++votes[static_cast<std::size_t>(c)];
    }
    int best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c)
        if (votes[c] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
    return best;
}

}  // namespace oracle
