#include "herd/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace herd {

namespace {

constexpr double kSize = 640.0;
constexpr double kDiskRadius = 300.0;
constexpr double kCenter = kSize / 2.0;

const char* kLevelColors[] = {"#888888", "#1f77b4", "#2ca02c", "#ff7f0e",
                              "#d62728", "#9467bd", "#8c564b", "#e377c2"};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

struct Mapper {
    double scale;  // sqrt(c): ball radius 1/sqrt(c) -> disk radius
    double px(const BallPoint& z) const { return kCenter + z.coords[0] * scale * kDiskRadius; }
    double py(const BallPoint& z) const { return kCenter - z.coords[1] * scale * kDiskRadius; }
};

}  // namespace

std::string embedding_svg(const DesignTree& tree, const EmbeddingTable& table,
                          const RunTrajectory* trajectory) {
    const Mapper map{std::sqrt(table.ball.curvature)};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    svg << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
    svg << "<circle class=\"disk\" cx=\"" << kCenter << "\" cy=\"" << kCenter << "\" r=\""
        << kDiskRadius << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    for (int id = 0; id < table.size(); ++id) {
        const int level = tree.node(id).level;
        const char* color = kLevelColors[level % (sizeof(kLevelColors) / sizeof(*kLevelColors))];
        svg << "<circle class=\"node\" cx=\"" << fmt(map.px(table.at(id))) << "\" cy=\""
            << fmt(map.py(table.at(id))) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }

    if (trajectory && !trajectory->mu_path.empty()) {
        for (const auto& s : trajectory->samples) {
            const double x = map.px(s), y = map.py(s);
            svg << "<path class=\"sample\" d=\"M " << fmt(x - 3) << " " << fmt(y) << " L "
                << fmt(x + 3) << " " << fmt(y) << " M " << fmt(x) << " " << fmt(y - 3) << " L "
                << fmt(x) << " " << fmt(y + 3)
                << "\" stroke=\"#999999\" stroke-width=\"0.8\" fill=\"none\"/>\n";
        }
        svg << "<polyline class=\"trajectory\" points=\"";
        for (size_t i = 0; i < trajectory->mu_path.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(map.px(trajectory->mu_path[i])) << ',' << fmt(map.py(trajectory->mu_path[i]));
        }
        svg << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

RunTrajectory trajectory_from_jsonl(const std::string& jsonl_text, const BallConfig& ball) {
    RunTrajectory traj;
    const BallPoint origin(Vec(ball.dim, 0.0));

    std::istringstream in(jsonl_text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        if (j.contains("final")) continue;

        if (j.contains("samples"))
            for (const auto& s : j["samples"]) {
                const auto z = s.value("z", Vec{});
                if (!z.empty()) traj.samples.push_back(BallPoint(z));
            }

        const auto mu = j.value("mu_after", Vec{});
        if (!mu.empty()) {
            if (first) {
                traj.mu_path.push_back(origin);  // the mean starts at zero
                first = false;
            }
            traj.mu_path.push_back(exp_map(origin, TangentVec(mu), ball));
        }
    }
    return traj;
}

}  // namespace herd
