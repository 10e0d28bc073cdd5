#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tricomi::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Bare line chart: frame, five ticks per axis, a dashed y = 0 line when the
/// range straddles zero, one polyline per series.
struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width = 640;
    int height = 420;

    std::string render() const;
    void write(const std::filesystem::path& path) const;
};

}  // namespace tricomi::svg
