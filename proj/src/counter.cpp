#include "rmk3/counter.hpp"

#include <chrono>
#include <functional>
#include <thread>

namespace rmk3 {

const char* count_method_name(CountMethod m) {
    return m == CountMethod::naive ? "naive" : "fibered";
}

CountMethod count_method_from_name(const std::string& s) {
    if (s == "naive") return CountMethod::naive;
    if (s == "fibered") return CountMethod::fibered;
    raise(errc::bad_parameter, "unknown counting method '" + s + "'");
}

namespace {

constexpr std::uint32_t kNoLog = LogTables::kNoLog;

FieldPtr counting_field(const FiberSpec& fiber, int k, const CountBudget& budget) {
    if (k < 1 || k > 16) raise(errc::degree_out_of_range, "k = " + std::to_string(k));
    FieldPtr field = Fq::make(fiber.p, k);
    u64 q = field->q_fits_u64() ? field->q64() : UINT64_MAX;
    u64 cap = budget.allow_large ? Fq::kLogTableMaxQ : std::min(budget.max_q, Fq::kLogTableMaxQ);
    if (q > cap)
        raise(errc::budget_exceeded,
              "q = p^k exceeds the counting budget (" + std::to_string(cap) + ")");
    return field;
}

// Deterministic partition of [0, n) into at most `jobs` chunks. Partial sums
// combine by integer addition, so the total is identical for any worker count.
u64 parallel_sum(u64 n, int jobs, const std::function<u64(u64, u64)>& chunk_sum) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n < 2) return chunk_sum(0, n);
    u64 nchunk = std::min<u64>((u64)jobs, n);
    std::vector<u64> partial(nchunk, 0);
    std::vector<std::thread> workers;
    u64 step = n / nchunk, extra = n % nchunk, begin = 0;
    for (u64 c = 0; c < nchunk; ++c) {
        u64 len = step + (c < extra ? 1 : 0);
        workers.emplace_back([&partial, &chunk_sum, c, begin, len] {
            partial[c] = chunk_sum(begin, begin + len);
        });
        begin += len;
    }
    for (auto& w : workers) w.join();
    u64 total = 0;
    for (u64 v : partial) total += v;
    return total;
}

}  // namespace

u64 count_double_cover_naive(const FiberSpec& fiber, int k, const CountBudget& budget) {
    SexticResidues s = branch_sextic_residues(fiber);  // validates the fiber
    FieldPtr field = counting_field(fiber, k, budget);
    const LogTables& T = field->log_tables();
    const u64 q = field->q64();
    const std::uint32_t qm1 = T.q_minus_1;

    // logs of the 28 coefficients; an F_p constant packs to its own residue
    std::uint32_t clog[7][7];
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j)
            clog[i][j] = s.c[i][j] ? T.log_of[(u64)s.c[i][j]] : kNoLog;

    // row = logs of a univariate sextic; returns sum over x of 1 + chi(f(x))
    auto horner_all_x = [&T, qm1](const std::uint32_t* row) -> u64 {
        u64 sub = (u64)(1 + T.chi_of_log(row[0]));  // x = 0
        for (std::uint32_t e = 0; e < qm1; ++e) {   // x = g^e
            std::uint32_t v = row[6];
            for (int i = 5; i >= 0; --i) {
                if (v != kNoLog) {
                    v += e;
                    if (v >= qm1) v -= qm1;
                }
                v = T.add_logs(v, row[i]);
            }
            sub += (u64)(1 + T.chi_of_log(v));
        }
        return sub;
    };

    // chart z = 1, rows indexed 0 (y = 0) and 1..q-1 (y = g^(r-1))
    auto row_sum = [&](u64 lo, u64 hi) -> u64 {
        u64 sub = 0;
        std::uint32_t row[7];
        for (u64 r = lo; r < hi; ++r) {
            if (r == 0) {
                for (int i = 0; i <= 6; ++i) row[i] = clog[i][0];
            } else {
                std::uint32_t ey = (std::uint32_t)(r - 1);
                std::uint32_t ypow[7];
                ypow[0] = 0;
                for (int j = 1; j <= 6; ++j) {
                    ypow[j] = ypow[j - 1] + ey;
                    if (ypow[j] >= qm1) ypow[j] -= qm1;
                }
                for (int i = 0; i <= 6; ++i) {
                    std::uint32_t acc = kNoLog;
                    for (int j = 0; i + j <= 6; ++j)
                        acc = T.add_logs(acc, T.mul_logs(clog[i][j], ypow[j]));
                    row[i] = acc;
                }
            }
            sub += horner_all_x(row);
        }
        return sub;
    };
    u64 total = parallel_sum(q, budget.jobs, row_sum);

    // chart z = 0, y = 1, plus the point (1 : 0 : 0)
    {
        std::uint32_t row[7];
        for (int i = 0; i <= 6; ++i) row[i] = clog[i][6 - i];
        total += horner_all_x(row);
    }
    total += (u64)(1 + T.chi_of_log(clog[6][0]));
    return total;
}

u64 count_double_cover_fibered(const FiberSpec& fiber, int k, const CountBudget& budget) {
    if (fiber.family != Family::qw5)
        raise(errc::wrong_family, "the fibered engine covers qw5 only");
    branch_sextic_residues(fiber);  // validates the fiber
    FieldPtr field = counting_field(fiber, k, budget);
    const LogTables& T = field->log_tables();
    const u64 q = field->q64();
    const std::uint32_t qm1 = T.q_minus_1;
    FqElem t = field->from_int(fiber.t);

    // pencil lines: (v0 : 1) with v0 indexed 0..q-1, then (1 : 0) at index q
    auto line_sum = [&](u64 lo, u64 hi) -> u64 {
        u64 sub = 0;
        for (u64 iv = lo; iv < hi; ++iv) {
            FqElem v0 = iv < q ? field->from_index(iv) : field->one();
            FqElem v1 = iv < q ? field->one() : field->zero();
            QuinticFiberForm form = quintic_fiber_form(field, t, v0, v1);
            if (form.scalar.is_zero()) {
                sub += q + 1;  // double line
                continue;
            }
            std::uint32_t slog = T.log_of[field->index_of(form.scalar)];
            std::uint32_t plog[6];
            for (int i = 0; i < 6; ++i) {
                u64 idx = field->index_of(form.coeffs[i]);
                plog[i] = idx ? T.log_of[idx] : kNoLog;
            }
            u64 cnt = q + 1;
            cnt = (u64)((i64)cnt + T.chi_of_log(T.mul_logs(slog, plog[0])));  // u = 0
            i64 chi_sum = 0;
            for (std::uint32_t e = 0; e < qm1; ++e) {  // u = g^e
                std::uint32_t v = plog[5];
                for (int i = 4; i >= 0; --i) {
                    if (v != kNoLog) {
                        v += e;
                        if (v >= qm1) v -= qm1;
                    }
                    v = T.add_logs(v, plog[i]);
                }
                chi_sum += T.chi_of_log(T.mul_logs(slog, v));
            }
            sub += (u64)((i64)cnt + chi_sum);
        }
        return sub;
    };
    u64 total = parallel_sum(q + 1, budget.jobs, line_sum);
    return total - q;  // remove the exceptional contribution of the center
}

CountRecord count_k3(const FiberSpec& fiber, int k, CountMethod method, const CountBudget& budget) {
    auto start = std::chrono::steady_clock::now();
    Arrangement arr = line_arrangement(fiber);
    u64 n_prime = method == CountMethod::naive ? count_double_cover_naive(fiber, k, budget)
                                               : count_double_cover_fibered(fiber, k, budget);
    u64 q = 1;
    for (int i = 0; i < k; ++i) q *= (u64)fiber.p;
    u64 n_k3 = n_prime + q * (u64)pair_fixed_count(arr.sigma, k);
    // a rational node's exceptional curve has q + 1 points, net +q per fixed pair
    u64 expect = q * q + 1;
    u64 dev = n_k3 > expect ? n_k3 - expect : expect - n_k3;
    if (dev > 22 * q) raise(errc::internal_error, "count violates the Weil bound");
    if (n_prime > 2 * (q * q + q + 1))
        raise(errc::internal_error, "double cover count out of range");
    std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    return CountRecord{fiber, k, n_prime, n_k3, method, secs.count()};
}

QuinticFiberForm quintic_fiber_form(const FieldPtr& field, const FqElem& t,
                                    const FqElem& v0, const FqElem& v1) {
    i64 p = field->p();
    if (p == 5) raise(errc::bad_parameter, "quintic fiber form needs characteristic != 5");
    auto c = [&field](i64 n) { return field->from_int(n); };
    FqElem i5 = c(inv_mod(5, p));
    FqElem i25 = i5 * i5;
    FqElem v00 = v0 * v0, v01 = v0 * v1, v11 = v1 * v1;
    FqElem v000 = v00 * v0, v001 = v00 * v1, v111 = v11 * v1;
    FqElem v0000 = v00 * v00, v0001 = v000 * v1, v0011 = v00 * v11,
           v0111 = v0 * v111, v1111 = v11 * v11;

    QuinticFiberForm f;
    f.field = field;
    f.t = t; f.v0 = v0; f.v1 = v1;
    f.coeffs[5] = field->one();
    f.coeffs[4] = v1 - v0;
    f.coeffs[3] = i5 * (c(3) * v00 - c(6) * v01 - c(2) * v11);
    f.coeffs[2] = i5 * (c(-1) * v000 + c(3) * v001 - c(2) * v111);
    f.coeffs[1] = i25 * (v0000 - c(4) * v0001 + v0011 + c(6) * v0111 + v1111);
    f.coeffs[0] = i25 * v1 * (v0000 + v0001 + v0011 + v0111 + v1111);
    f.scalar = c(25) * (v0 + (c(-2) * t + c(2)) * v1);
    f.alpha = i25 * (c(-1) * v00 + c(2) * v01 + c(4) * v11);
    FqElem s = (v0 - v1) * i5;
    FqElem acc = f.coeffs[5];
    for (int i = 4; i >= 0; --i) acc = acc * s + f.coeffs[i];
    f.shift_c = acc;
    return f;
}

DicksonNormalized dickson_normalize(const QuinticFiberForm& form) {
    const FieldPtr& field = form.field;
    FqElem s = (form.v0 - form.v1) * field->from_int(inv_mod(5, field->p()));
    // Taylor shift: b_i = sum_{j >= i} binom(j, i) a_j s^(j-i)
    static const i64 binom[6][6] = {
        {1, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {1, 2, 1, 0, 0, 0},
        {1, 3, 3, 1, 0, 0}, {1, 4, 6, 4, 1, 0}, {1, 5, 10, 10, 5, 1},
    };
    std::array<FqElem, 6> spow;
    spow[0] = field->one();
    for (int i = 1; i < 6; ++i) spow[i] = spow[i - 1] * s;
    std::array<FqElem, 6> shifted;
    for (int i = 0; i < 6; ++i) {
        FqElem acc = field->zero();
        for (int j = i; j < 6; ++j)
            acc = acc + field->from_int(binom[j][i]) * form.coeffs[j] * spow[j - i];
        shifted[i] = acc;
    }
    shifted[0] = shifted[0] - form.shift_c;

    FqElem five = field->from_int(5);
    std::array<FqElem, 6> expected = {field->zero(),
                                      five * form.alpha * form.alpha,
                                      field->zero(),
                                      -(five * form.alpha),
                                      field->zero(),
                                      field->one()};
    if (!(shifted == expected))
        raise(errc::normalization_mismatch, "shifted quintic is not the Dickson form");
    return DicksonNormalized{form.alpha, form.shift_c, shifted};
}

bool is_permutation_polynomial(std::span<const i64> coeffs, i64 p) {
    if (p > 10000) raise(errc::budget_exceeded, "permutation check is limited to p <= 10^4");
    if (p < 2 || !is_prime((u64)p)) raise(errc::not_prime, "p = " + std::to_string(p));
    std::vector<bool> seen(p, false);
    for (i64 u = 0; u < p; ++u) {
        i64 v = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            v = (v * u + *it) % p;
            if (v < 0) v += p;
        }
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace rmk3
