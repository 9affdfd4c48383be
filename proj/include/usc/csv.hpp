// csv.hpp — CSV emission at full double precision (17 significant digits),
// so golden-file comparison applies explicit tolerances instead of rounding.

#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "usc/errors.hpp"

namespace usc {

inline std::string format_double(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw ConfigError("cannot open output file: " + path);
        out_.imbue(std::locale::classic());
    }

    void header(const std::vector<std::string>& names) {
        for (size_t i = 0; i < names.size(); ++i) {
            if (i) out_ << ',';
            out_ << names[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace usc
