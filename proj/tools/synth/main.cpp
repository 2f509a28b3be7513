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

#include "synth_pages.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

// Writes synthetic scanned text pages named <lang>_<dpi>_<index>.pgm.
int main(int argc, char** argv)
{
    CLI::App app{"Generate synthetic scanned document pages", "docsr-synth-pages"};
    std::string out_dir;
    int count = 8, height = 360, width = 480, dpi = 150;
    std::uint64_t seed = 0;
    std::string lang = "synth";
    app.add_option("out_dir", out_dir)->required();
    app.add_option("--count", count)->capture_default_str();
    app.add_option("--height", height)->capture_default_str();
    app.add_option("--width", width)->capture_default_str();
    app.add_option("--dpi", dpi)->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--lang", lang)->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(out_dir);
    docsr::synth::PageOptions opts;
    opts.height = height;
    opts.width = width;
    opts.dpi = dpi;
    for (int i = 0; i < count; ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%d_%03d.pgm", lang.c_str(), dpi, i);
        docsr::save_image(docsr::synth::synth_page(opts, seed * 1000003ull + i), std::filesystem::path(out_dir) / name);
    }
    std::cerr << "wrote " << count << " pages to " << out_dir << "\n";
    return 0;
}
