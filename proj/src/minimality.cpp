#include "quademb/minimality.hpp"

#include <sstream>
#include <stdexcept>

namespace quademb {

long long order_bound_f(long long x) { return x * (x - 5) / 2; }

MinimalityCertificate minimality_certificate(const Embedding& e) {
    auto rep = verify_quadrangular(e, false);
    if (!rep.pass)
        throw std::invalid_argument("minimality_certificate: embedding is not quadrangular: " +
                                    rep.summary);
    MinimalityCertificate cert;
    cert.n = e.graph.num_vertices();
    cert.m = e.graph.num_edges();
    cert.deleted = cert.n * (cert.n - 1) / 2 - cert.m;
    cert.chi = cert.n - cert.m + rep.face_count;
    cert.f_n = order_bound_f(cert.n);
    cert.f_n_minus_1 = order_bound_f(cert.n - 1);
    cert.delta = cert.f_n - cert.f_n_minus_1;  // = n - 3
    cert.slack = cert.delta - cert.deleted;

    bool hypotheses = rep.simple && rep.connected && cert.n >= 5 && cert.deleted <= cert.n - 4;
    cert.verdict = hypotheses ? MinimalityVerdict::minimal : MinimalityVerdict::inconclusive;

    std::ostringstream ex;
    ex << "n=" << cert.n << " m=" << cert.m << " d=" << cert.deleted << " chi=" << cert.chi;
    if (hypotheses) {
        ex << "; any smaller quadrangulation of the same surface needs at least "
           << "f(n)-f(n') - d >= (n-3) - d = " << cert.slack
           << " >= 1 excess edges over a simple graph, so this one is minimal";
    } else {
        ex << "; hypotheses not met (need simple connected, n >= 5, d <= n-4): "
           << "verdict inconclusive";
    }
    cert.explanation = ex.str();
    return cert;
}

MinimalTableRow minimal_table_gs(int k, int p) {
    if (k < 4) throw std::invalid_argument("gs family: k >= 4 required");
    if (p < 0 || 4 * (p + 1) > k)
        throw std::invalid_argument("gs family: 0 <= p <= k/4 - 1 required");
    MinimalTableRow row;
    row.family = "gs";
    row.param1 = k;
    row.param2 = p;
    row.orientable_genus = static_cast<long long>(k) * (k - 3) / 2 - p + 1;
    row.nonorientable_genus = static_cast<long long>(k) * k - 3ll * k - 2ll * p + 2;
    row.order = 2 * k;
    return row;
}

MinimalTableRow minimal_table_k4(int l, int q) {
    if (l < 1) throw std::invalid_argument("k4 family: l >= 1 required");
    if (q < 0 || 2 * q > l - 1)
        throw std::invalid_argument("k4 family: 0 <= q <= (l-1)/2 required");
    MinimalTableRow row;
    row.family = "k4";
    row.param1 = l;
    row.param2 = q;
    row.orientable_genus = 8ll * l * l - 5ll * l - 4ll * q + 1;
    row.nonorientable_genus = 16ll * l * l - 10ll * l - 8ll * q + 2;
    row.order = 8 * l;
    return row;
}

std::string to_tsv(const MinimalTableRow& row) {
    std::ostringstream out;
    out << row.family << "\t" << row.param1 << " " << row.param2 << "\t"
        << row.orientable_genus << "\t" << row.nonorientable_genus << "\t" << row.order;
    return out.str();
}

}  // namespace quademb
