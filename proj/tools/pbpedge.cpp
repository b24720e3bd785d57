// Command-line front end: detect, degree-map, algebra, compare, group.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbp/csv.hpp"
#include "pbp/pgm.hpp"
#include "pbp/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_input(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// Writes through a temp file and renames so a failure never leaves a
// partial output behind.
void write_output(const std::string& path, std::string_view bytes) {
    if (path == "-") {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("cannot write to stdout");
        return;
    }
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + path);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("cannot write file: " + path);
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot write file: " + path);
    }
}

struct CommonFlags {
    double sigma = 1.0;
    int levels = 10;
    std::string quantizer = "uniform";
    std::string patch = "6x6";
    int stride = 1;
    int degree_threshold = 3;
    std::string combine = "max";
    std::string hysteresis;
    int threads = 0;
};

void add_preprocess_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--sigma", f.sigma, "Gaussian blur standard deviation; 0 disables")
        ->capture_default_str();
    cmd->add_option("--levels", f.levels, "Intensity levels after quantization (2-256)")
        ->capture_default_str();
    cmd->add_option("--quantizer", f.quantizer, "Quantizer: uniform or quantile")
        ->capture_default_str();
}

void add_scan_flags(CLI::App* cmd, CommonFlags& f, bool with_hysteresis = true) {
    cmd->add_option("--patch", f.patch, "Patch size as HxW, e.g. 6x6")
        ->capture_default_str();
    cmd->add_option("--stride", f.stride, "Scan stride in pixels")
        ->capture_default_str();
    cmd->add_option("-p,--degree-threshold", f.degree_threshold,
                    "Classify a patch as edge when its degree exceeds this")
        ->capture_default_str();
    cmd->add_option("--combine", f.combine,
                    "Orientation rule: max (either direction) or both")
        ->capture_default_str();
    if (with_hysteresis) {
        cmd->add_option("--hysteresis", f.hysteresis,
                        "LOW,HIGH degree bands; keeps weak cells connected to "
                        "strong ones and classifies kept cells with d > LOW");
    }
    cmd->add_option("--threads", f.threads, "Worker threads for the scan; 0 = auto")
        ->capture_default_str();
}

pbp::PipelineConfig build_config(const CommonFlags& f) {
    pbp::PipelineConfig cfg;
    cfg.pre.sigma = f.sigma;
    cfg.pre.levels = f.levels;
    if (f.quantizer == "uniform") {
        cfg.pre.quantizer = pbp::Quantizer::Uniform;
    } else if (f.quantizer == "quantile") {
        cfg.pre.quantizer = pbp::Quantizer::Quantile;
    } else {
        throw std::invalid_argument("--quantizer must be uniform or quantile");
    }

    const std::size_t x = f.patch.find_first_of("xX");
    if (x == std::string::npos) {
        throw std::invalid_argument("--patch must look like HxW, e.g. 6x6");
    }
    try {
        cfg.scan.patch_rows = std::stoi(f.patch.substr(0, x));
        cfg.scan.patch_cols = std::stoi(f.patch.substr(x + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--patch must look like HxW, e.g. 6x6");
    }
    cfg.scan.stride = f.stride;
    cfg.scan.degree_threshold = f.degree_threshold;
    if (f.combine == "max") {
        cfg.scan.combine = pbp::Combine::Max;
    } else if (f.combine == "both") {
        cfg.scan.combine = pbp::Combine::Both;
    } else {
        throw std::invalid_argument("--combine must be max or both");
    }
    if (!f.hysteresis.empty()) {
        const std::size_t comma = f.hysteresis.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("--hysteresis must look like LOW,HIGH");
        }
        pbp::HysteresisBand band;
        try {
            band.low = std::stoi(f.hysteresis.substr(0, comma));
            band.high = std::stoi(f.hysteresis.substr(comma + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("--hysteresis must look like LOW,HIGH");
        }
        cfg.scan.hysteresis = band;
    }
    cfg.threads = f.threads;
    cfg.validate();
    return cfg;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

json grid_report(const pbp::DegreeMap& dm) {
    return json{{"rows", dm.grid_rows},
                {"cols", dm.grid_cols},
                {"covered_width", dm.covered_width()},
                {"covered_height", dm.covered_height()},
                {"patch_rows", dm.patch_rows},
                {"patch_cols", dm.patch_cols},
                {"stride", dm.stride}};
}

int run_detect(const std::string& input, const std::string& output,
               const std::string& degree_csv, const CommonFlags& flags,
               bool as_json) {
    const pbp::PipelineConfig cfg = build_config(flags);
    const pbp::GrayImage gray = pbp::read_image_auto(read_input(input));
    const pbp::DetectResult res = pbp::run_detect(gray, cfg);
    print_warnings(res.warnings);
    write_output(output, pbp::write_pgm(res.mask));
    if (!degree_csv.empty()) {
        write_output(degree_csv, pbp::write_degree_csv(res.degrees));
    }
    if (as_json) {
        json report{{"input", input},
                    {"output", output},
                    {"image", {{"width", gray.width}, {"height", gray.height}}},
                    {"grid", grid_report(res.degrees)},
                    {"edge_pixels", res.mask.edge_pixel_count()},
                    {"warnings", res.warnings}};
        std::cout << report.dump(2) << "\n";
    }
    return 0;
}

int run_degree_map(const std::string& input, const std::string& output,
                   const CommonFlags& flags, bool as_json) {
    const pbp::PipelineConfig cfg = build_config(flags);
    const pbp::GrayImage gray = pbp::read_image_auto(read_input(input));
    pbp::DetectResult res = pbp::run_detect(gray, cfg);
    print_warnings(res.warnings);
    write_output(output, pbp::write_degree_csv(res.degrees));
    if (as_json) {
        json report{{"input", input},
                    {"output", output},
                    {"image", {{"width", gray.width}, {"height", gray.height}}},
                    {"grid", grid_report(res.degrees)},
                    {"warnings", res.warnings}};
        std::cout << report.dump(2) << "\n";
    }
    return 0;
}

int run_algebra(const std::string& input, bool transpose, bool as_json) {
    pbp::CostMatrix matrix;
    try {
        matrix = pbp::read_matrix_csv(read_input(input));
    } catch (const pbp::ParseError& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return 2;
    }
    if (transpose) matrix = matrix.transposed();
    const pbp::PseudoBooleanPolynomial poly = pbp::build_polynomial(matrix);
    if (as_json) {
        json report{{"polynomial", pbp::to_canonical_string(poly)},
                    {"degree", poly.degree()},
                    {"monomials", poly.terms().size()}};
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << pbp::to_canonical_string(poly) << "\n";
        std::cout << "degree=" << poly.degree() << "\n";
    }
    return 0;
}

int run_compare(const std::string& input, const std::string& out_dir,
                int sobel_threshold, const CommonFlags& flags, bool as_json) {
    if (sobel_threshold < 0) {
        throw std::invalid_argument("--sobel-threshold must be nonnegative");
    }
    const pbp::PipelineConfig cfg = build_config(flags);
    const pbp::GrayImage gray = pbp::read_image_auto(read_input(input));
    const pbp::CompareResult res = pbp::run_compare(gray, cfg, sobel_threshold);
    print_warnings(res.warnings);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_output((dir / "pbp_mask.pgm").string(), pbp::write_pgm(res.pbp_mask));
    write_output((dir / "sobel_mask.pgm").string(), pbp::write_pgm(res.sobel_mask));
    write_output((dir / "diff.pgm").string(), pbp::write_pgm(res.diff));

    json report{{"pbp_edge_px", res.pbp_edge_px},
                {"sobel_edge_px", res.sobel_edge_px},
                {"agreement", res.agreement}};
    write_output((dir / "report.json").string(), report.dump(2) + "\n");
    if (as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "pbp_edge_px=" << res.pbp_edge_px << "\n"
                  << "sobel_edge_px=" << res.sobel_edge_px << "\n"
                  << "agreement=" << res.agreement << "\n";
    }
    return 0;
}

int run_group(const std::string& input, int top, const CommonFlags& flags,
              bool as_json) {
    const pbp::PipelineConfig cfg = build_config(flags);
    const pbp::GrayImage gray = pbp::read_image_auto(read_input(input));
    const pbp::GrayImage blurred = pbp::gaussian_blur(gray, cfg.pre.sigma);
    std::vector<std::string> warnings;
    const pbp::QuantizedImage q =
        pbp::quantize(blurred, cfg.pre.levels, cfg.pre.quantizer, &warnings);
    print_warnings(warnings);
    const std::vector<pbp::PatchGroup> groups = pbp::group_equivalent(q, cfg.scan);

    if (as_json) {
        json out{{"group_count", groups.size()}, {"groups", json::array()}};
        for (const pbp::PatchGroup& g : groups) {
            json positions = json::array();
            for (const pbp::PatchPos& p : g.positions) {
                positions.push_back({p.row, p.col});
            }
            out["groups"].push_back(
                {{"polynomial", pbp::to_canonical_string(g.polynomial)},
                 {"degree", g.polynomial.degree()},
                 {"count", g.positions.size()},
                 {"positions", positions}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::vector<std::size_t> order(groups.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return groups[a].positions.size() > groups[b].positions.size();
        });
        std::cout << "groups: " << groups.size() << "\n";
        const std::size_t shown = std::min<std::size_t>(order.size(),
                                                        top < 0 ? 0 : top);
        for (std::size_t i = 0; i < shown; ++i) {
            const pbp::PatchGroup& g = groups[order[i]];
            std::cout << "count=" << g.positions.size()
                      << " degree=" << g.polynomial.degree() << " "
                      << pbp::to_canonical_string(g.polynomial) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge detection from patch-wise pseudo-Boolean polynomial degrees"};
    app.set_version_flag("--version", std::string("pbpedge ") + kVersion);
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::string degree_csv;
    std::string out_dir = ".";
    CommonFlags flags;
    bool as_json = false;
    bool transpose = false;
    int sobel_threshold = 100;
    int top = 10;

    CLI::App* detect = app.add_subcommand(
        "detect", "Run the full pipeline and write the edge mask");
    detect->add_option("input", input, "Input image (PGM/PPM) or - for stdin")
        ->required();
    detect->add_option("-o,--output", output, "Output mask path or - for stdout")
        ->default_val("mask.pgm");
    detect->add_option("--degree-csv", degree_csv, "Also write the degree map CSV");
    add_preprocess_flags(detect, flags);
    add_scan_flags(detect, flags);
    detect->add_flag("--json", as_json, "Print a machine-readable run report");

    CLI::App* degree_map = app.add_subcommand(
        "degree-map", "Run the pipeline through scanning and write the degree CSV");
    degree_map->add_option("input", input, "Input image (PGM/PPM) or - for stdin")
        ->required();
    degree_map->add_option("-o,--output", output, "Output CSV path or - for stdout")
        ->default_val("degree.csv");
    add_preprocess_flags(degree_map, flags);
    add_scan_flags(degree_map, flags);
    degree_map->add_flag("--json", as_json, "Print a machine-readable run report");

    CLI::App* algebra = app.add_subcommand(
        "algebra", "Reduce a CSV matrix to its canonical polynomial");
    algebra->add_option("input", input, "Matrix CSV path or - for stdin")
        ->required();
    algebra->add_flag("--transpose", transpose, "Reduce the transposed matrix");
    algebra->add_flag("--json", as_json, "Print a machine-readable report");

    CLI::App* compare = app.add_subcommand(
        "compare", "Write polynomial and Sobel masks plus their diff and report");
    compare->add_option("input", input, "Input image (PGM/PPM) or - for stdin")
        ->required();
    compare->add_option("-o,--out-dir", out_dir, "Directory for the output files")
        ->capture_default_str();
    compare->add_option("--sobel-threshold", sobel_threshold,
                        "Gradient magnitude threshold for the Sobel mask")
        ->capture_default_str();
    add_preprocess_flags(compare, flags);
    add_scan_flags(compare, flags);
    compare->add_flag("--json", as_json, "Print the report as JSON");

    CLI::App* group = app.add_subcommand(
        "group", "Partition patches by canonical polynomial equality");
    group->add_option("input", input, "Input image (PGM/PPM) or - for stdin")
        ->required();
    group->add_option("--top", top, "Largest groups to list in text mode")
        ->capture_default_str();
    add_preprocess_flags(group, flags);
    add_scan_flags(group, flags, /*with_hysteresis=*/false);
    group->add_flag("--json", as_json, "Print the full partition as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*detect) {
            return run_detect(input, output, degree_csv, flags, as_json);
        }
        if (*degree_map) {
            return run_degree_map(input, output, flags, as_json);
        }
        if (*algebra) {
            return run_algebra(input, transpose, as_json);
        }
        if (*compare) {
            return run_compare(input, out_dir, sobel_threshold, flags, as_json);
        }
        if (*group) {
            return run_group(input, top, flags, as_json);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
