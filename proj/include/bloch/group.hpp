#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "bloch/errors.hpp"

namespace bloch {

/// A finite group given by its multiplication table.
/// table[i][j] is the index of g_i * g_j.
struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> table;
    int identity_index = -1;
    std::vector<int> inverse;  // inverse[i] = index of g_i^{-1}

    int mul(int i, int j) const { return table[i][j]; }
    int inv(int i) const { return inverse[i]; }
};

inline FiniteGroup validate_group(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw NotLatinSquare("empty table");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n)
            throw NotLatinSquare("row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n)
                throw NotLatinSquare("entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") out of range");
    }
    // Latin square: each row and column a permutation.
    for (int i = 0; i < n; ++i) {
        std::vector<bool> row(n, false), col(n, false);
        for (int j = 0; j < n; ++j) {
            if (row[table[i][j]])
                throw NotLatinSquare("row " + std::to_string(i) +
                                     " repeats element " + std::to_string(table[i][j]));
            row[table[i][j]] = true;
            if (col[table[j][i]])
                throw NotLatinSquare("column " + std::to_string(i) +
                                     " repeats element " + std::to_string(table[j][i]));
            col[table[j][i]] = true;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw NotAssociative("associativity fails at (" + std::to_string(i) +
                                         "," + std::to_string(j) + "," + std::to_string(k) + ")");
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (table[e][i] != i || table[i][e] != i) { ok = false; break; }
        if (ok) { identity = e; break; }
    }
    if (identity < 0) throw NoIdentity("no two-sided identity element");
    std::vector<int> inverse(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (table[i][j] == identity && table[j][i] == identity) { inverse[i] = j; break; }
        if (inverse[i] < 0)
            throw NoInverse("element " + std::to_string(i) + " has no two-sided inverse");
    }
    return FiniteGroup{n, table, identity, inverse};
}

inline FiniteGroup cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return validate_group(t);
}

namespace detail {

// Permutations of {0,1,2} in a fixed order: identity first, then the two
// 3-cycles, then the three transpositions.
inline const std::vector<std::array<int, 3>>& s3_permutations() {
    static const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    return perms;
}

}  // namespace detail

/// Symmetric group on three letters, with the table built by composing
/// permutations ((p*q)(x) = p(q(x))).
inline FiniteGroup symmetric_group_3() {
    const auto& perms = detail::s3_permutations();
    const int n = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::array<int, 3> comp{};
            for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
            auto it = std::find(perms.begin(), perms.end(), comp);
            t[i][j] = static_cast<int>(it - perms.begin());
        }
    return validate_group(t);
}

/// Dihedral group of the square, elements r^k s^j indexed as k + 4*j,
/// with r the rotation by pi/2 and s a reflection (s r s = r^{-1}).
inline FiniteGroup dihedral_group_4() {
    auto idx = [](int k, int j) { return ((k % 4) + 4) % 4 + 4 * (j % 2); };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int k1 = 0; k1 < 4; ++k1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int k2 = 0; k2 < 4; ++k2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    // (r^k1 s^j1)(r^k2 s^j2) = r^{k1 + (-1)^j1 k2} s^{j1+j2}
                    int k = j1 ? k1 - k2 : k1 + k2;
                    t[idx(k1, j1)][idx(k2, j2)] = idx(k, j1 + j2);
                }
    return validate_group(t);
}

}  // namespace bloch
