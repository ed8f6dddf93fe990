#pragma once

#include <iostream>
#include <string>

#include <fmt/format.h>

namespace acceptance {

/// Collects one verdict line per criterion.
class Report {
public:
    void record(int id, bool pass, const std::string& title, const std::string& detail) {
        std::cout << fmt::format("{} criterion {}: {} ({})\n", pass ? "PASS" : "FAIL", id, title,
                                 detail)
                  << std::flush;
        failures_ += pass ? 0 : 1;
    }
    void skip(int id, const std::string& title, const std::string& reason) {
        std::cout << fmt::format("SKIP criterion {}: {} ({})\n", id, title, reason) << std::flush;
        ++skipped_;
    }
    void info(const std::string& text) { std::cout << "INFO " << text << '\n' << std::flush; }

    int failures() const { return failures_; }
    int skipped() const { return skipped_; }

private:
    int failures_ = 0;
    int skipped_ = 0;
};

}  // namespace acceptance
