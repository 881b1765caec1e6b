#pragma once

#include <cstdint>
#include <string>

#include "quademb/embedding.hpp"

namespace quademb {

// f(x) = x(x-5)/2; for integer n this is C(n,2) - 2n.
long long order_bound_f(long long x);

enum class MinimalityVerdict { minimal, inconclusive };

// A quadrangular embedding of a simple connected graph missing at most n-4
// edges from K_n (n >= 5) is a minimal quadrangulation. The certificate
// records the inequality chain so the verdict can be rechecked by hand:
// a smaller quadrangulation of the same surface would need
// m' - C(n',2) >= f(n) - f(n') - d >= (n-3) - d >= 1 excess edges.
struct MinimalityCertificate {
    int n = 0;              // order of the host complete graph
    int m = 0;              // edges actually present
    int deleted = 0;        // d = C(n,2) - m
    int chi = 0;
    MinimalityVerdict verdict = MinimalityVerdict::inconclusive;
    long long f_n = 0;           // f(n)
    long long f_n_minus_1 = 0;   // f(n-1)
    long long delta = 0;         // f(n) - f(n-1) = n - 3
    long long slack = 0;         // delta - deleted; >= 1 certifies minimality
    std::string explanation;
};

// Throws on non-quadrangular input; verdict inconclusive whenever the
// hypotheses fail (the bound is one-directional, so never "non-minimal").
MinimalityCertificate minimality_certificate(const Embedding& e);

struct MinimalTableRow {
    std::string family;       // "gs" or "k4"
    int param1 = 0;           // k or l
    int param2 = 0;           // p or q
    long long orientable_genus = 0;
    long long nonorientable_genus = 0;
    int order = 0;
};

// gs(k, p): minimal quadrangulations of order 2k from doubled graphs,
// k >= 4, 0 <= p <= k/4 - 1.
// k4(l, q): minimal quadrangulations of order 8l from K4-compositions,
// l >= 1, 0 <= q <= (l-1)/2.
MinimalTableRow minimal_table_gs(int k, int p);
MinimalTableRow minimal_table_k4(int l, int q);

std::string to_tsv(const MinimalTableRow& row);

}  // namespace quademb
