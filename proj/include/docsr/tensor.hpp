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

#include <cstddef>
#include <span>
#include <vector>

namespace docsr {

struct Shape3 {
    int height = 0;
    int width = 0;
    int channels = 0;

    std::size_t size() const
    {
        return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
    }
    bool operator==(const Shape3&) const = default;
};

/// Dense height x width x channels array, row-major with the channel index
/// innermost: element (y, x, c) lives at ((y * width) + x) * channels + c.
///
/// A default-constructed tensor is empty (all dims 0); every other tensor has
/// all dims >= 1.
template <typename T>
class Tensor3 {
public:
    using value_type = T;

    Tensor3() = default;
    Tensor3(int height, int width, int channels, T fill = T{});
    explicit Tensor3(Shape3 shape, T fill = T{}) : Tensor3(shape.height, shape.width, shape.channels, fill) {}
    Tensor3(Shape3 shape, std::vector<T> values);

    int height() const { return shape_.height; }
    int width() const { return shape_.width; }
    int channels() const { return shape_.channels; }
    Shape3 shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::size_t index(int y, int x, int c) const
    {
        return (static_cast<std::size_t>(y) * shape_.width + x) * shape_.channels + c;
    }
    T& operator()(int y, int x, int c) { return data_[index(y, x, c)]; }
    const T& operator()(int y, int x, int c) const { return data_[index(y, x, c)]; }

    // Channel vector of pixel (y, x).
    T* pixel(int y, int x) { return data_.data() + index(y, x, 0); }
    const T* pixel(int y, int x) const { return data_.data() + index(y, x, 0); }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }
    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    void fill(T value);
    bool all_finite() const;

    bool operator==(const Tensor3&) const = default;

private:
    Shape3 shape_;
    std::vector<T> data_;
};

template <typename To, typename From>
Tensor3<To> tensor_cast(const Tensor3<From>& t)
{
    std::vector<To> out(t.values().begin(), t.values().end());
    return Tensor3<To>(t.shape(), std::move(out));
}

extern template class Tensor3<float>;
extern template class Tensor3<double>;

} // namespace docsr
