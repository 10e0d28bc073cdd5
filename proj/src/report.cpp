#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tricomi/cli.hpp"
#include "tricomi/criteria.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/io.hpp"

namespace tricomi::cli {

namespace {

namespace fs = std::filesystem;

struct Row {
    std::string status = "NOT RUN";
    std::string source = "-";
    std::string evidence = "no acceptance.csv and no matching artifacts";
};

std::string g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(std::string s) {
    for (std::size_t i = 0; (i = s.find('|', i)) != std::string::npos; i += 2) s.replace(i, 1, "\\|");
    return s;
}

/// Splits "id,status,name,detail"; detail may contain commas.
std::map<int, Row> read_acceptance(const fs::path& path) {
    std::map<int, Row> rows;
    std::ifstream in(path);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (first) {
            first = false;
            if (line.rfind("id,", 0) == 0) continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        for (int k = 0; k < 3 && std::getline(ss, cell, ','); ++k) cells.push_back(cell);
        std::string rest;
        std::getline(ss, rest);
        if (cells.size() < 3) continue;
        try {
            const int id = std::stoi(cells[0]);
            rows[id] = Row{cells[1], "acceptance.csv", rest};
        } catch (const std::exception&) {
            continue;
        }
    }
    return rows;
}

int column(const io::Table& t, const std::string& name) {
    const int c = t.column(name);
    if (c < 0) throw std::runtime_error("missing column " + name);
    return c;
}

std::vector<fs::path> matching(const fs::path& dir, const std::string& prefix, const std::string& ext) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.rfind(prefix, 0) == 0 && e.path().extension() == ext) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Row> check_rho(const fs::path& dir) {
    const auto files = matching(dir, "rho_verify_", ".csv");
    if (files.empty()) return std::nullopt;
    double worst_residual = 0.0, worst_ratio = 0.0, worst_log = 0.0;
    int ratio_rows = 0, log_rows = 0;
    for (const auto& f : files) {
        const io::Table t = io::read_table(f);
        const int ct = column(t, "t"), cphi = column(t, "phi"), cres = column(t, "ode_residual");
        const int cratio = column(t, "asymptotic_ratio"), clog = column(t, "log_derivative_ratio");
        double limit = std::nan("");
        for (const auto& [k, v] : io::read_header(f)) {
            if (k == "ratio_limit") limit = std::stod(v);
        }
        for (const auto& r : t.rows) {
            if (r[ct] <= 10.0) worst_residual = std::max(worst_residual, std::abs(r[cres]));
            if (r[cphi] >= 50.0 && std::isfinite(limit)) {
                worst_ratio = std::max(worst_ratio, std::abs(r[cratio] / limit - 1.0));
                ++ratio_rows;
            }
            if (r[cphi] >= 100.0) {
                worst_log = std::max(worst_log, std::abs(r[clog] + 1.0));
                ++log_rows;
            }
        }
    }
    const bool ok = worst_residual <= 1e-6 && worst_ratio <= 1e-2 && worst_log <= 1e-2;
    Row row;
    row.status = ok ? "PARTIAL" : "FAIL";
    row.source = "rho_verify_*.csv";
    row.evidence = std::to_string(files.size()) + " table(s); max ODE residual " + g6(worst_residual) +
                   "; ratio deviation " + g6(worst_ratio) + " over " + std::to_string(ratio_rows) +
                   " rows; log-derivative deviation " + g6(worst_log) + " over " + std::to_string(log_rows) +
                   " rows" + (ratio_rows == 0 || log_rows == 0 ? "; far-field rows missing" : "");
    if (ok && ratio_rows > 0 && log_rows > 0) row.status = "PASS";
    return row;
}

std::optional<Row> check_figures(const fs::path& dir) {
    std::map<int, io::Table> tables;
    for (int k = 1; k <= 7; ++k) {
        const fs::path p = dir / ("fig" + std::to_string(k) + ".csv");
        if (fs::exists(p)) tables[k] = io::read_table(p);
    }
    if (tables.empty()) return std::nullopt;
    auto min_f2 = [&](int k, double t_cap) {
        const io::Table& t = tables[k];
        const int ct = column(t, "t"), cf = column(t, "F2");
        double lo = INFINITY;
        for (const auto& r : t.rows) {
            if (r[ct] <= t_cap) lo = std::min(lo, r[cf]);
        }
        return lo;
    };
    std::vector<std::string> notes;
    bool ok = true;
    if (tables.count(1)) {
        const double lo = min_f2(1, INFINITY);
        ok &= lo > 0.0;
        notes.push_back("fig1 min F2 " + g6(lo) + (lo > 0.0 ? " > 0" : " not positive"));
    }
    if (tables.count(4)) {
        const io::Table& t = tables[4];
        const int ct = column(t, "t"), cf = column(t, "F2");
        int changes = 0;
        for (std::size_t i = 1; i < t.rows.size() && t.rows[i][ct] <= 3.0; ++i) {
            if ((t.rows[i][cf] > 0.0) != (t.rows[i - 1][cf] > 0.0)) ++changes;
        }
        ok &= changes >= 2;
        notes.push_back("fig4 sign changes on [1, 3]: " + std::to_string(changes));
    }
    if (tables.count(6) && tables.count(7)) {
        const double lo6 = min_f2(6, INFINITY), lo7 = min_f2(7, INFINITY);
        ok &= lo7 < lo6;
        notes.push_back("min F2 " + g6(lo7) + " with F1(1)=100 vs " + g6(lo6) + " with F1'(1)=100");
    }
    Row row;
    row.status = ok ? "PARTIAL" : "FAIL";
    row.source = "fig*.csv";
    row.evidence = std::to_string(tables.size()) + "/7 figures";
    for (const auto& n : notes) row.evidence += "; " + n;
    if (ok) row.evidence += "; the scaling check needs the acceptance run";
    return row;
}

std::optional<Row> check_sweep(const fs::path& dir) {
    const fs::path p = dir / "sweep.csv";
    if (!fs::exists(p)) return std::nullopt;
    const io::Table t = io::read_table(p);
    const int ce = column(t, "eps"), cT = column(t, "T");
    std::vector<std::pair<double, double>> pts;
    int finite = 0;
    for (const auto& r : t.rows) {
        pts.emplace_back(r[ce], r[cT]);
        finite += std::isfinite(r[cT]) ? 1 : 0;
    }
    std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.first > b.first; });
    bool monotone = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (std::isfinite(pts[i].second) && std::isfinite(pts[i - 1].second) && pts[i].second < pts[i - 1].second) {
            monotone = false;
        }
    }
    const bool ok = finite == static_cast<int>(pts.size()) && finite >= 3 && monotone;
    Row row;
    row.status = ok ? "PARTIAL" : "FAIL";
    row.source = "sweep.csv";
    row.evidence = std::to_string(finite) + "/" + std::to_string(pts.size()) + " runs blew up; T " +
                   (monotone ? "non-decreasing" : "not monotone") + " as eps decreases";
    if (ok) row.evidence += "; grid-refinement check needs the acceptance run";
    return row;
}

std::optional<Row> check_fit(const fs::path& dir) {
    const fs::path p = dir / "fit.txt";
    if (!fs::exists(p)) return std::nullopt;
    std::ifstream in(p);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string v = line.substr(colon + 1);
        v.erase(0, v.find_first_not_of(' '));
        kv[line.substr(0, colon)] = v;
    }
    Row row;
    row.source = "fit.txt";
    if (kv.count("fit_error")) {
        row.status = "WARN";
        row.evidence = kv["fit_error"];
        return row;
    }
    const double gap = kv.count("gap") ? std::stod(kv["gap"]) : std::nan("");
    row.status = std::isfinite(gap) && gap <= 0.25 ? "PASS" : "WARN";
    row.evidence = "slope " + kv["slope"] + " vs " + kv["alpha_theory"] + ", gap " + g6(gap);
    return row;
}

}  // namespace

std::string build_report(const std::filesystem::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("report input is not a directory", dir.string());
    std::map<int, Row> rows;
    const fs::path acceptance = dir / "acceptance.csv";
    if (fs::exists(acceptance)) rows = read_acceptance(acceptance);

    auto fill = [&](int id, std::optional<Row> (*check)(const fs::path&)) {
        if (rows.count(id)) return;
        try {
            if (auto r = check(dir)) rows[id] = *r;
        } catch (const std::exception& e) {
            rows[id] = Row{"FAIL", "artifacts", std::string("unreadable: ") + e.what()};
        }
    };
    fill(4, check_rho);
    fill(5, check_figures);
    fill(8, check_sweep);
    fill(9, check_fit);

    std::ostringstream md;
    md << "# tricomi-lab report\n\n";
    md << "Input directory: `" << dir.string() << "`\n\n";
    md << "| # | Criterion | Status | Source | Evidence |\n";
    md << "|---|---|---|---|---|\n";
    for (const auto& c : kCriteria) {
        const Row r = rows.count(c.id) ? rows[c.id] : Row{};
        md << "| " << c.id << " | " << c.name << " | " << r.status << " | " << r.source << " | "
           << escape(r.evidence) << " |\n";
    }
    md << "\nPARTIAL means every check derivable from the artifacts passed, but some sub-checks "
          "only run inside the acceptance binary.\n";

    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().filename() != "report.md") files.push_back(e.path().filename().string());
    }
    std::sort(files.begin(), files.end());
    md << "\n## Files\n\n";
    if (files.empty()) md << "(none)\n";
    for (const auto& f : files) md << "- " << f << '\n';
    return md.str();
}

}  // namespace tricomi::cli
