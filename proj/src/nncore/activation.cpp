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

#include "docsr/activation.hpp"

#include "docsr/error.hpp"

#include <algorithm>

namespace docsr {

namespace {

template <typename T>
void check_same(const Tensor3<T>& a, const Tensor3<T>& b)
{
    if (a.shape() != b.shape())
        throw ShapeMismatch("activation operands differ in shape");
}

template <typename T>
void check_slopes(const Tensor3<T>& x, std::size_t n)
{
    if (n != static_cast<std::size_t>(x.channels()))
        throw ShapeMismatch("prelu slope count " + std::to_string(n) + " != channel count " +
                            std::to_string(x.channels()));
}

} // namespace

template <typename T>
Tensor3<T> relu_forward(const Tensor3<T>& x)
{
    Tensor3<T> out = x;
    for (T& v : out.values())
        v = v > T{} ? v : T{};
    return out;
}

template <typename T>
Tensor3<T> relu_backward(const Tensor3<T>& x, const Tensor3<T>& grad_out)
{
    check_same(x, grad_out);
    Tensor3<T> g(x.shape());
    auto xv = x.values();
    auto go = grad_out.values();
    auto gi = g.values();
    for (std::size_t i = 0; i < xv.size(); ++i)
        gi[i] = xv[i] > T{} ? go[i] : T{};
    return g;
}

template <typename T>
Tensor3<T> prelu_forward(const Tensor3<T>& x, std::span<const T> slopes)
{
    check_slopes(x, slopes.size());
    Tensor3<T> out = x;
    const std::size_t nc = slopes.size();
    auto v = out.values();
    const T* sp = slopes.data();
    const std::size_t pixels = nc == 0 ? 0 : v.size() / nc;
    for (std::size_t p = 0; p < pixels; ++p) {
        T* row = v.data() + p * nc;
        for (std::size_t c = 0; c < nc; ++c)
            row[c] = std::max(row[c], T{}) + std::min(row[c], T{}) * sp[c];
    }
    return out;
}

template <typename T>
Tensor3<T> prelu_backward(const Tensor3<T>& x, const Tensor3<T>& grad_out, std::span<const T> slopes,
                          std::span<T> grad_slopes)
{
    check_same(x, grad_out);
    check_slopes(x, slopes.size());
    check_slopes(x, grad_slopes.size());
    Tensor3<T> g(x.shape());
    const std::size_t nc = slopes.size();
    auto xv = x.values();
    auto go = grad_out.values();
    auto gi = g.values();
    const T* sp = slopes.data();
    T* gs = grad_slopes.data();
    const std::size_t pixels = nc == 0 ? 0 : xv.size() / nc;
    for (std::size_t p = 0; p < pixels; ++p) {
        const T* xr = xv.data() + p * nc;
        const T* gr = go.data() + p * nc;
        T* out = gi.data() + p * nc;
        for (std::size_t c = 0; c < nc; ++c) {
            const T neg = xr[c] > T{} ? T{} : T{1};
            out[c] = gr[c] * (T{1} - neg + neg * sp[c]);
            gs[c] += neg * xr[c] * gr[c];
        }
    }
    return g;
}

#define DOCSR_INSTANTIATE(T)                                                                                  \
    template Tensor3<T> relu_forward(const Tensor3<T>&);                                                     \
    template Tensor3<T> relu_backward(const Tensor3<T>&, const Tensor3<T>&);                                 \
    template Tensor3<T> prelu_forward(const Tensor3<T>&, std::span<const T>);                                \
    template Tensor3<T> prelu_backward(const Tensor3<T>&, const Tensor3<T>&, std::span<const T>, std::span<T>);

DOCSR_INSTANTIATE(float)
DOCSR_INSTANTIATE(double)
#undef DOCSR_INSTANTIATE

} // namespace docsr
