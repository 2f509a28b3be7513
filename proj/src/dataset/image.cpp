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

#include "docsr/image.hpp"

#include "docsr/error.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace docsr {

GrayImage::GrayImage(int h, int w, std::uint8_t fill) : height(h), width(w)
{
    if (h < 1 || w < 1)
        throw ImageTooSmall("image dims must be >= 1");
    pixels.assign(static_cast<std::size_t>(h) * w, fill);
}

std::uint8_t GrayImage::clamped(int y, int x) const
{
    return at(std::clamp(y, 0, height - 1), std::clamp(x, 0, width - 1));
}

GrayImage GrayImage::crop(int y, int x, int h, int w) const
{
    if (y < 0 || x < 0 || y + h > height || x + w > width)
        throw ImageTooSmall("crop window outside image");
    GrayImage out(h, w);
    for (int r = 0; r < h; ++r)
        std::copy_n(&pixels[static_cast<std::size_t>(y + r) * width + x], w, &out.pixels[static_cast<std::size_t>(r) * w]);
    return out;
}

GrayImage GrayImage::pad_replicate(int margin) const
{
    GrayImage out(height + 2 * margin, width + 2 * margin);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(y, x) = clamped(y - margin, x - margin);
    return out;
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

namespace {

std::vector<std::uint8_t> read_all(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Netpbm header fields are whitespace separated with '#' comments.
class PnmHeader {
public:
    explicit PnmHeader(const std::vector<std::uint8_t>& bytes) : b_(bytes) {}

    int next_int()
    {
        skip_space();
        if (pos_ >= b_.size() || !std::isdigit(b_[pos_]))
            throw UnsupportedFormat("malformed PNM header");
        long v = 0;
        while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
            v = v * 10 + (b_[pos_++] - '0');
            if (v > (1 << 24))
                throw UnsupportedFormat("PNM header value out of range");
        }
        return static_cast<int>(v);
    }
    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_start()
    {
        if (pos_ >= b_.size() || !std::isspace(b_[pos_]))
            throw UnsupportedFormat("malformed PNM header");
        return pos_ + 1;
    }

private:
    void skip_space()
    {
        while (pos_ < b_.size()) {
            if (b_[pos_] == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(b_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& b_;
    std::size_t pos_ = 2;
};

GrayImage decode_pnm(const std::vector<std::uint8_t>& bytes, bool color)
{
    PnmHeader h(bytes);
    const int w = h.next_int();
    const int ht = h.next_int();
    const int maxval = h.next_int();
    const std::size_t start = h.raster_start();
    if (w < 1 || ht < 1)
        throw UnsupportedFormat("PNM image has zero size");
    if (maxval != 255)
        throw UnsupportedFormat("only maxval 255 PNM images are supported");
    const std::size_t n = static_cast<std::size_t>(w) * ht;
    const std::size_t need = n * (color ? 3 : 1);
    if (bytes.size() < start + need)
        throw UnsupportedFormat("PNM raster truncated");
    GrayImage img(ht, w);
    const std::uint8_t* p = bytes.data() + start;
    if (color) {
        for (std::size_t i = 0; i < n; ++i)
            img.pixels[i] = luma(p[3 * i], p[3 * i + 1], p[3 * i + 2]);
    } else {
        std::copy_n(p, n, img.pixels.begin());
    }
    return img;
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw UnsupportedFormat(std::string("PNG: ") + image.message);
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    // Keep alpha so libpng never composites; the alpha channel is ignored.
    image.format = color ? PNG_FORMAT_RGBA : PNG_FORMAT_GA;
    const int channels = color ? 4 : 2;
    std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
        png_image_free(&image);
        throw UnsupportedFormat(std::string("PNG: ") + image.message);
    }
    GrayImage img(static_cast<int>(image.height), static_cast<int>(image.width));
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const std::uint8_t* px = &raw[i * channels];
        img.pixels[i] = color ? luma(px[0], px[1], px[2]) : px[0];
    }
    return img;
}

bool has_png_extension(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png";
}

} // namespace

GrayImage load_image(const std::filesystem::path& path)
{
    const auto bytes = read_all(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return decode_pnm(bytes, false);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6')
        return decode_pnm(bytes, true);
    static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(png_sig, png_sig + 8, bytes.begin()))
        return decode_png(bytes);
    throw UnsupportedFormat("unrecognized image format: " + path.string());
}

void save_image(const GrayImage& img, const std::filesystem::path& path)
{
    if (img.height < 1 || img.width < 1 || img.pixels.size() != static_cast<std::size_t>(img.height) * img.width)
        throw ImageTooSmall("cannot save an empty image");
    if (has_png_extension(path)) {
        png_image image;
        std::memset(&image, 0, sizeof image);
        image.version = PNG_IMAGE_VERSION;
        image.width = static_cast<png_uint_32>(img.width);
        image.height = static_cast<png_uint_32>(img.height);
        image.format = PNG_FORMAT_GRAY;
        if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels.data(), 0, nullptr))
            throw IoError("cannot write " + path.string() + ": " + image.message);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    f << "P5\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (!f)
        throw IoError("write failed: " + path.string());
}

} // namespace docsr
