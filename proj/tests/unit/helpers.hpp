#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil {

/// Distance in representable doubles between two same-sign finite values.
inline std::uint64_t ulp_distance(double a, double b) {
    const auto ia = std::bit_cast<std::int64_t>(a);
    const auto ib = std::bit_cast<std::int64_t>(b);
    return static_cast<std::uint64_t>(ia > ib ? ia - ib : ib - ia);
}

inline std::filesystem::path data_dir() { return CHAINFP_DATA_DIR; }

/// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        dir_ = std::filesystem::temp_directory_path() /
               ("chainfp_test_" + std::to_string(rng()));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return dir_; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        const auto file = dir_ / name;
        std::ofstream out(file, std::ios::trunc | std::ios::binary);
        out << content;
        return file;
    }

private:
    std::filesystem::path dir_;
};

}  // namespace testutil
