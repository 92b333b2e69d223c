#include <cstdio>
#include <fstream>
#include <sstream>

#include "zenolab/errors.hpp"
#include "zenolab/experiment.hpp"

namespace zenolab {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// Quote only when needed; ids produced by the library never contain commas.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

constexpr const char* kPlotTemplate = R"PY(#!/usr/bin/env python3
"""Plot error and bound against the sweep parameter on log-log axes."""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = @CSV@
OUT_PATH = @PNG@


def main():
    series = defaultdict(lambda: {"parameter": [], "error": [], "bound": []})
    title = ""
    with open(CSV_PATH, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            title = f"{row['experiment_id']} ({row['kind']})"
            s = series[row["state_id"]]
            s["parameter"].append(float(row["parameter"]))
            s["error"].append(float(row["error"]))
            s["bound"].append(float(row["bound"]) if row["bound"] else None)
    if not series:
        sys.exit(f"{CSV_PATH}: no rows")

    fig, ax = plt.subplots(figsize=(7, 5))
    for state_id, s in sorted(series.items()):
        pts = [(p, e) for p, e in zip(s["parameter"], s["error"]) if e > 0]
        if pts:
            line, = ax.loglog(*zip(*pts), marker="o", label=f"{state_id} error")
            bpts = [(p, b) for p, b in zip(s["parameter"], s["bound"]) if b]
            if bpts:
                ax.loglog(*zip(*bpts), linestyle="--", color=line.get_color(),
                          label=f"{state_id} bound")
    ax.set_xlabel("parameter")
    ax.set_ylabel("error")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    if len(series) <= 12:
        ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(OUT_PATH, dpi=150)
    print(OUT_PATH)


if __name__ == "__main__":
    main()
)PY";

std::string py_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

void replace_all(std::string& text, const std::string& key, const std::string& value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos;
       pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
}

}  // namespace

std::string format_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << field(r.experiment_id) << ',' << field(r.kind) << ',' << fmt(r.parameter)
        << ',' << field(r.state_id) << ',' << fmt(r.error) << ',' << fmt(r.bound) << ','
        << fmt(r.fitted_C) << ',' << fmt(r.fitted_p) << ',' << fmt(r.wall_time_ms)
        << '\n';
  }
  return out.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << format_csv(rows);
}

std::filesystem::path emit_plot_script(const std::filesystem::path& csv_path) {
  if (!std::filesystem::is_regular_file(csv_path)) {
    throw ConfigError("csv", "no such file: " + csv_path.string());
  }
  {
    std::ifstream in(csv_path);
    std::string header;
    std::getline(in, header);
    if (header != kCsvHeader) {
      throw ConfigError("csv", csv_path.string() + " does not carry the report header");
    }
  }
  const auto abs_csv = std::filesystem::absolute(csv_path);
  std::filesystem::path png = abs_csv;
  png.replace_extension(".png");
  std::filesystem::path script = abs_csv;
  script.replace_extension(".plot.py");

  std::string text = kPlotTemplate;
  replace_all(text, "@CSV@", py_string(abs_csv.string()));
  replace_all(text, "@PNG@", py_string(png.string()));
  std::ofstream out(script, std::ios::binary);
  if (!out) throw Error("cannot write " + script.string());
  out << text;
  return script;
}

}  // namespace zenolab
