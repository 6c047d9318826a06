#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cuspflow {

// CSV with RFC-4180 quoting; every file starts with the schema comment line
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        out_ << "# cuspflow-schema v1\n";
    }

    static std::string quote(const std::string& field) {
        bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
        if (!needs) return field;
        std::string q = "\"";
        for (char c : field) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        q += "\"";
        return q;
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << quote(fields[i]);
        }
        out_ << '\n';
    }

    bool good() const { return out_.good(); }

  private:
    std::ofstream out_;
};

inline std::string fmt_g(double v, int prec = 17) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

} // namespace cuspflow
