#include "cohen/render.hpp"

#include <algorithm>

#include "cohen/errors.hpp"

namespace cohen {

namespace {

struct Annotation {
  bool marker = false;
  bool bit = false;
  std::size_t payload_index = 0;
};

// Per-row annotations and per-cell activity flags from the logs.
struct Layout {
  std::vector<std::vector<bool>> active;  // [row][col]
  std::vector<Annotation> rows;
};

Layout layout_for(const MatrixCondition& matrix, const BlockchainResult* logs) {
  const std::size_t h = matrix.height();
  const std::size_t w = matrix.index_set().size();
  Layout out;
  out.active.assign(h, std::vector<bool>(w, false));
  out.rows.assign(h, Annotation{});
  if (!logs) return out;

  std::map<Label, std::size_t> col_at;
  std::size_t c = 0;
  for (const Label& l : matrix.index_set()) col_at[l] = c++;

  for (const auto& step : logs->step_log) {
    for (const Label& l : step.active) {
      auto it = col_at.find(l);
      if (it == col_at.end()) continue;
      for (std::size_t r = step.row_begin; r < step.row_end && r < h; ++r) {
        out.active[r][it->second] = true;
      }
    }
  }
  for (const auto& [coded_set, records] : logs->marker_log) {
    for (const auto& rec : records) {
      if (rec.marker_row < h) {
        out.rows[rec.marker_row].marker = true;
        out.rows[rec.marker_row].payload_index = rec.payload_index;
      }
      if (rec.bit_row < h) {
        out.rows[rec.bit_row].bit = true;
        out.rows[rec.bit_row].payload_index = rec.payload_index;
      }
    }
  }
  return out;
}

std::string ascii_grid(const std::vector<std::string>& headers,
                       const std::vector<std::vector<char>>& cells,
                       const std::vector<std::string>& row_notes) {
  std::string out;
  const std::size_t h = cells.size();
  for (std::size_t r = h; r-- > 0;) {
    out += "  ";
    for (char c : cells[r]) {
      out += c;
      out += ' ';
    }
    if (!row_notes[r].empty()) out += " " + row_notes[r];
    out += '\n';
  }
  out += "  ";
  for (const auto& name : headers) {
    out += name.substr(0, 1);
    out += ' ';
  }
  out += " (columns";
  for (const auto& name : headers) out += " " + name;
  out += ", row 0 at the bottom)\n";
  return out;
}

std::string svg_header(std::size_t width_px, std::size_t height_px) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width_px) +
         "\" height=\"" + std::to_string(height_px) +
         "\">\n"
         "<defs><pattern id=\"hatch\" width=\"4\" height=\"4\" "
         "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"4\" stroke=\"#888\" stroke-width=\"1\"/>"
         "</pattern></defs>\n";
}

}  // namespace

std::string render_matrix(const MatrixCondition& matrix, const BlockchainResult* logs,
                          RenderFormat format) {
  if (!matrix.is_uniform()) throw DomainError("render: matrix must be uniform");
  const std::size_t h = matrix.height();
  const std::size_t w = matrix.index_set().size();
  Layout layout = layout_for(matrix, logs);

  if (format == RenderFormat::Ascii) {
    if (h == 0 || w == 0) return "  (empty matrix)\n";
    std::vector<std::vector<char>> cells(h, std::vector<char>(w, '.'));
    std::size_t c = 0;
    for (const Label& l : matrix.index_set()) {
      const BitString& col = matrix.column(l);
      for (std::size_t r = 0; r < h; ++r) {
        int bit = r < col.size() ? col.bit(r) : 0;
        if (layout.active[r][c]) {
          cells[r][c] = bit ? '1' : '0';
        } else {
          cells[r][c] = bit ? '1' : '.';  // padded zeros draw as dots
        }
      }
      ++c;
    }
    std::vector<std::string> notes(h);
    for (std::size_t r = 0; r < h; ++r) {
      if (layout.rows[r].marker) notes[r] = "<- marker";
      if (layout.rows[r].bit) {
        notes[r] = "<- z(" + std::to_string(layout.rows[r].payload_index) + ")";
      }
    }
    std::vector<std::string> headers;
    for (const Label& l : matrix.index_set()) headers.push_back(l.text());
    return ascii_grid(headers, cells, notes);
  }

  const std::size_t cell = 16;
  const std::size_t margin = 24;
  std::string svg = svg_header(w * cell + margin * 2 + 120, h * cell + margin * 2);
  std::size_t c = 0;
  for (const Label& l : matrix.index_set()) {
    const BitString& col = matrix.column(l);
    for (std::size_t r = 0; r < h; ++r) {
      int bit = r < col.size() ? col.bit(r) : 0;
      std::size_t x = margin + c * cell;
      std::size_t y = margin + (h - 1 - r) * cell;
      std::string fill = layout.active[r][c] ? "url(#hatch)" : "white";
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
             std::to_string(cell) + "\" height=\"" + std::to_string(cell) +
             "\" fill=\"" + fill + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + std::to_string(x + cell / 2) + "\" y=\"" +
             std::to_string(y + cell - 4) +
             "\" font-size=\"10\" text-anchor=\"middle\">" + (bit ? "1" : "0") + "</text>\n";
    }
    svg += "<text x=\"" + std::to_string(margin + c * cell + cell / 2) + "\" y=\"" +
           std::to_string(margin + h * cell + 14) +
           "\" font-size=\"10\" text-anchor=\"middle\">" + l.text() + "</text>\n";
    ++c;
  }
  for (std::size_t r = 0; r < h; ++r) {
    if (!layout.rows[r].marker && !layout.rows[r].bit) continue;
    std::size_t y = margin + (h - 1 - r) * cell + cell - 4;
    std::string text = layout.rows[r].marker
                           ? "marker"
                           : "z(" + std::to_string(layout.rows[r].payload_index) + ")";
    svg += "<text x=\"" + std::to_string(margin + w * cell + 8) + "\" y=\"" + std::to_string(y) +
           "\" font-size=\"10\">" + text + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_primed(const PrimedFamily& primed, RenderFormat format) {
  const std::size_t n = primed.primed.size();
  const std::size_t h = primed.reference.size();
  MatrixCondition as_matrix(IndexSet::range(n + 1));
  for (std::size_t k = 0; k < n; ++k) {
    as_matrix.set_column(Label(static_cast<std::uint64_t>(k)), primed.primed[k]);
  }
  as_matrix.set_column(Label(static_cast<std::uint64_t>(n)), primed.reference);

  // Good rows read as markers, their successors as the mutable slots.
  BlockchainResult logs;
  GoodPointSet gp = good_points(primed.reference);
  IndexSet everything = as_matrix.index_set();
  for (std::size_t t = 0; t < gp.good.size(); ++t) {
    logs.marker_log[everything].push_back(MarkerRecord{gp.good[t], gp.coding[t], t, 0});
  }
  logs.step_log.push_back(StepRecord{0, "primed", "primed family", 0, h, everything});
  return render_matrix(as_matrix, &logs, format);
}

}  // namespace cohen
