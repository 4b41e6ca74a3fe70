// io.hpp — number formatting, sweep tables and Choi matrix files.

#pragma once

#include "giant_atoms/protocols.hpp"
#include "giant_atoms/tomography.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace giant_atoms::io {

inline constexpr int kRoundTripDigits = 17;

inline std::string num(double v, int digits = kRoundTripDigits) { return fmt::format("{:.{}g}", v, digits); }

// Value as it would print with `digits` significant digits, so JSON output
// honours the same precision as CSV.
inline double rounded(double v, int digits = kRoundTripDigits) {
    return digits >= kRoundTripDigits ? v : std::stod(num(v, digits));
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& r, int digits = kRoundTripDigits) {
    out << "gamma_ex_over_g,gamma_phi_over_g,fidelity\n";
    for (const auto& p : r.points) out << num(p.ex, digits) << ',' << num(p.phi, digits) << ',' << num(p.fidelity, digits) << '\n';
}

inline nlohmann::ordered_json fit_json(const SweepResult& r, int digits = kRoundTripDigits) {
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (const auto& p : r.points) grid.push_back({rounded(p.ex, digits), rounded(p.phi, digits)});
    nlohmann::ordered_json j;
    j["target"] = r.target;
    j["intercept"] = rounded(r.intercept, digits);
    j["c_ex"] = rounded(r.c_ex, digits);
    j["c_phi"] = rounded(r.c_phi, digits);
    j["rms_residual"] = rounded(r.rms_residual, digits);
    j["nonlinear_warning"] = r.nonlinear;
    j["grid"] = grid;
    return j;
}

inline nlohmann::ordered_json sweep_json(const SweepResult& r, int digits = kRoundTripDigits) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"gamma_ex_over_g", rounded(p.ex, digits)},
                       {"gamma_phi_over_g", rounded(p.phi, digits)},
                       {"fidelity", rounded(p.fidelity, digits)}});
    }
    nlohmann::ordered_json j;
    j["points"] = pts;
    j["fit"] = fit_json(r, digits);
    return j;
}

// Row-major; each output line holds one matrix row as re,im pairs.
inline void write_choi_csv(std::ostream& out, const ChoiMatrix& c, int digits = kRoundTripDigits) {
    for (Eigen::Index r = 0; r < c.matrix.rows(); ++r) {
        for (Eigen::Index k = 0; k < c.matrix.cols(); ++k) {
            if (k) out << ',';
            out << num(c.matrix(r, k).real(), digits) << ',' << num(c.matrix(r, k).imag(), digits);
        }
        out << '\n';
    }
}

// Binary layout: "CHOI", u32 d, u32 reserved, u32 reserved (16 bytes), then
// (d^2)^2 complex entries row-major as little-endian float64 re, im.
namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("choi file: truncated header");
    return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void put_f64(std::ostream& out, double v) {
    auto u = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

inline double get_f64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("choi file: truncated data");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

}  // namespace detail

inline void write_choi_binary(std::ostream& out, const ChoiMatrix& c) {
    out.write("CHOI", 4);
    detail::put_u32(out, static_cast<std::uint32_t>(c.d));
    detail::put_u32(out, 0);
    detail::put_u32(out, 0);
    for (Eigen::Index r = 0; r < c.matrix.rows(); ++r) {
        for (Eigen::Index k = 0; k < c.matrix.cols(); ++k) {
            detail::put_f64(out, c.matrix(r, k).real());
            detail::put_f64(out, c.matrix(r, k).imag());
        }
    }
}

inline ChoiMatrix read_choi_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "CHOI", 4) != 0) throw std::runtime_error("choi file: bad magic");
    const auto d = static_cast<Eigen::Index>(detail::get_u32(in));
    detail::get_u32(in);
    detail::get_u32(in);
    if (d < 1 || d > 1024) throw std::runtime_error("choi file: implausible dimension");
    ChoiMatrix c{Eigen::MatrixXcd(d * d, d * d), d};
    for (Eigen::Index r = 0; r < d * d; ++r) {
        for (Eigen::Index k = 0; k < d * d; ++k) {
            const double re = detail::get_f64(in);
            c.matrix(r, k) = cplx(re, detail::get_f64(in));
        }
    }
    return c;
}

}  // namespace giant_atoms::io
