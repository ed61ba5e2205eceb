#include "hours_effect/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hours_effect {

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void Provenance::add(const std::filesystem::path& path, std::string_view bytes) {
    inputs[path.generic_string()] = fnv1a64_hex(bytes);
}

nlohmann::json provenance_to_json(const Provenance& p) {
    return nlohmann::json{{"tool_version", std::string(kToolVersion)}, {"inputs", p.inputs}};
}

std::string format_scalar(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

namespace {

std::string cell(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

void pad_to(std::string& line, std::size_t width) {
    if (line.size() < width) line.append(width - line.size(), ' ');
}

} // namespace

std::string render_meta_table(std::span<const StudyObservation> obs, const MetaResult& result) {
    constexpr std::size_t c0 = 0, c1 = 44, c2 = 56, c3 = 68, c4 = 84;
    std::ostringstream out;

    std::string head = "study";
    pad_to(head, c1);
    head += "N";
    pad_to(head, c2);
    head += "r";
    pad_to(head, c3);
    head += "N*r";
    pad_to(head, c4);
    head += "N*(r-r_bar)^2";
    out << head << "\n" << std::string(head.size(), '-') << "\n";

    double sum_nr = 0.0, sum_sq = 0.0;
    for (const auto& o : obs) {
        const double n = static_cast<double>(o.sample_size);
        const double d = o.elasticity - result.r_bar;
        sum_nr += n * o.elasticity;
        sum_sq += n * d * d;
        std::string line = o.study_label + " (" + o.group_tag + ")";
        if (line.size() > c1 - 2) line = line.substr(0, c1 - 4) + "..";
        pad_to(line, c1);
        line += std::to_string(o.sample_size);
        pad_to(line, c2);
        line += cell(o.elasticity);
        pad_to(line, c3);
        line += cell(n * o.elasticity);
        pad_to(line, c4);
        line += cell(n * d * d);
        out << line << "\n";
    }
    std::string total = "TOTAL";
    pad_to(total, c1);
    total += std::to_string(static_cast<long long>(result.total_n));
    pad_to(total, c3);
    total += cell(sum_nr);
    pad_to(total, c4);
    total += cell(sum_sq);
    out << total << "\n\n";

    out << "k             = " << result.k << "\n";
    out << "mean_n        = " << format_scalar(result.mean_n) << "\n";
    out << "r_bar         = " << format_scalar(result.r_bar) << "\n";
    out << "var_observed  = " << format_scalar(result.var_observed) << "\n";
    out << "var_sampling  = " << format_scalar(result.var_sampling) << "\n";
    out << "var_true      = " << format_scalar(result.var_true)
        << (result.clamped ? "  (clamped)" : "") << "\n";
    out << "z             = " << format_scalar(result.z) << "\n";
    out << "interval      = [" << format_scalar(result.ci_low) << ", "
        << format_scalar(result.ci_high) << "]\n";
    (void)c0;
    return out.str();
}

} // namespace hours_effect
