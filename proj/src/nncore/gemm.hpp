/*
 *  Copyright 2026 The docsr Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

// Row-major C += A * B with a register-blocked micro-kernel. Internal to the
// conv kernels; the naive reference in docsr/reference.hpp is what tests
// compare against.

#include "docsr/parallel.hpp"

#include <algorithm>
#include <cstring>
#include <vector>

namespace docsr::detail {

// 256-bit lane of T; GCC/Clang vector extension, lowered to whatever the
// target offers.
template <typename T>
using Vec [[gnu::vector_size(32)]] = T;

template <typename T>
inline Vec<T> load_vec(const T* p)
{
    Vec<T> v;
    std::memcpy(&v, p, sizeof v);
    return v;
}

template <typename T>
inline void store_vec(T* p, Vec<T> v)
{
    std::memcpy(p, &v, sizeof v);
}

template <typename T>
inline constexpr int kVecWidth = static_cast<int>(sizeof(Vec<T>) / sizeof(T));

// C[MR x NV*W] += A[MR x K] * B[K x NV*W], accumulators held in registers.
template <typename T, int MR, int NV>
inline void gemm_micro(int K, const T* __restrict A, int lda, const T* __restrict B, int ldb, T* __restrict C, int ldc)
{
    constexpr int W = kVecWidth<T>;
    Vec<T> acc[MR][NV];
    for (int r = 0; r < MR; ++r)
        for (int v = 0; v < NV; ++v)
            acc[r][v] = load_vec<T>(C + r * ldc + v * W);
    for (int k = 0; k < K; ++k) {
        const T* b = B + static_cast<std::ptrdiff_t>(k) * ldb;
        Vec<T> bv[NV];
        for (int v = 0; v < NV; ++v)
            bv[v] = load_vec<T>(b + v * W);
        for (int r = 0; r < MR; ++r) {
            const T a = A[r * lda + k];
            for (int v = 0; v < NV; ++v)
                acc[r][v] += a * bv[v];
        }
    }
    for (int r = 0; r < MR; ++r)
        for (int v = 0; v < NV; ++v)
            store_vec<T>(C + r * ldc + v * W, acc[r][v]);
}

template <typename T, int NV>
inline void gemm_rows(int m, int K, const T* A, int lda, const T* B, int ldb, T* C, int ldc)
{
    switch (m) {
    case 4: gemm_micro<T, 4, NV>(K, A, lda, B, ldb, C, ldc); break;
    case 3: gemm_micro<T, 3, NV>(K, A, lda, B, ldb, C, ldc); break;
    case 2: gemm_micro<T, 2, NV>(K, A, lda, B, ldb, C, ldc); break;
    case 1: gemm_micro<T, 1, NV>(K, A, lda, B, ldb, C, ldc); break;
    default: break;
    }
}

// B's last N % W columns, zero-padded to one full vector per row.
template <typename T>
struct TailPanel {
    int first = 0;
    int width = 0;
    std::vector<T> data; // K x W
};

template <typename T>
TailPanel<T> pack_tail(int N, int K, const T* B, int ldb)
{
    constexpr int W = kVecWidth<T>;
    TailPanel<T> t;
    t.width = N % W;
    t.first = N - t.width;
    if (t.width == 0)
        return t;
    t.data.assign(static_cast<std::size_t>(K) * W, T{});
    for (int k = 0; k < K; ++k)
        std::copy_n(B + static_cast<std::ptrdiff_t>(k) * ldb + t.first, t.width, t.data.data() + k * W);
    return t;
}

constexpr int kGemmMr = 4;

// One kGemmMr-row stripe of C.
template <typename T>
inline void gemm_stripe(int i, int M, int K, const T* A, int lda, const T* B, int ldb, T* C, int ldc,
                        const TailPanel<T>& tail)
{
    constexpr int W = kVecWidth<T>;
    const int m = std::min(kGemmMr, M - i);
    const T* a = A + static_cast<std::ptrdiff_t>(i) * lda;
    T* c = C + static_cast<std::ptrdiff_t>(i) * ldc;
    int j = 0;
    for (; j + 2 * W <= tail.first; j += 2 * W)
        gemm_rows<T, 2>(m, K, a, lda, B + j, ldb, c + j, ldc);
    for (; j < tail.first; j += W)
        gemm_rows<T, 1>(m, K, a, lda, B + j, ldb, c + j, ldc);
    if (tail.width == 0)
        return;
    T ct[kGemmMr * W] = {};
    for (int r = 0; r < m; ++r)
        std::copy_n(c + r * ldc + tail.first, tail.width, ct + r * W);
    gemm_rows<T, 1>(m, K, a, lda, tail.data.data(), W, ct, W);
    for (int r = 0; r < m; ++r)
        std::copy_n(ct + r * W, tail.width, c + r * ldc + tail.first);
}

template <typename T>
inline T dot(int K, const T* __restrict a, const T* __restrict b, int ldb)
{
    constexpr int W = kVecWidth<T>;
    int k = 0;
    T sum{};
    if (ldb == 1) {
        Vec<T> acc{};
        for (; k + W <= K; k += W)
            acc += load_vec<T>(a + k) * load_vec<T>(b + k);
        for (int l = 0; l < W; ++l)
            sum += acc[l];
    }
    for (; k < K; ++k)
        sum += a[k] * b[static_cast<std::ptrdiff_t>(k) * ldb];
    return sum;
}

// C[M x N] += A[M x K] * B[K x N], all row-major with leading dimensions.
template <typename T>
void gemm(int M, int N, int K, const T* A, int lda, const T* B, int ldb, T* C, int ldc)
{
    if (N == 1) {
        for (int i = 0; i < M; ++i)
            C[static_cast<std::ptrdiff_t>(i) * ldc] += dot(K, A + static_cast<std::ptrdiff_t>(i) * lda, B, ldb);
        return;
    }
    const TailPanel<T> tail = pack_tail(N, K, B, ldb);
    const int stripes = (M + kGemmMr - 1) / kGemmMr;
    // The serial path is kept separate: an outlined omp region loses the
    // aliasing facts the micro-kernel relies on even when it runs on one thread.
    if (!parallel::worthwhile(static_cast<std::size_t>(M) * N * K)) {
        for (int b = 0; b < stripes; ++b)
            gemm_stripe(b * kGemmMr, M, K, A, lda, B, ldb, C, ldc, tail);
        return;
    }
#pragma omp parallel for schedule(static)
    for (int b = 0; b < stripes; ++b)
        gemm_stripe(b * kGemmMr, M, K, A, lda, B, ldb, C, ldc, tail);
}

// out[cols x rows] = in[rows x cols]^T
template <typename T>
void transpose(int rows, int cols, const T* in, T* out)
{
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out[static_cast<std::ptrdiff_t>(c) * rows + r] = in[static_cast<std::ptrdiff_t>(r) * cols + c];
}

} // namespace docsr::detail
