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

#include "docsr/tensor.hpp"

#include "docsr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace docsr {

template <typename T>
Tensor3<T>::Tensor3(int height, int width, int channels, T fill)
{
    if (height < 1 || width < 1 || channels < 1)
        throw ShapeMismatch("tensor dims must be >= 1, got " + std::to_string(height) + "x" + std::to_string(width) +
                            "x" + std::to_string(channels));
    shape_ = {height, width, channels};
    data_.assign(shape_.size(), fill);
}

template <typename T>
Tensor3<T>::Tensor3(Shape3 shape, std::vector<T> values)
{
    if (shape.height < 1 || shape.width < 1 || shape.channels < 1)
        throw ShapeMismatch("tensor dims must be >= 1");
    if (values.size() != shape.size())
        throw ShapeMismatch("tensor data length " + std::to_string(values.size()) + " != " +
                            std::to_string(shape.size()));
    shape_ = shape;
    data_ = std::move(values);
}

template <typename T>
void Tensor3<T>::fill(T value)
{
    std::fill(data_.begin(), data_.end(), value);
}

template <typename T>
bool Tensor3<T>::all_finite() const
{
    return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
}

template class Tensor3<float>;
template class Tensor3<double>;

} // namespace docsr
