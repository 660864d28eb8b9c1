#pragma once

#include <string>

#include "omegaprobe/cloud.hpp"
#include "omegaprobe/geometry.hpp"
#include "omegaprobe/probe.hpp"

namespace omegaprobe {

// {"vertices": [[x, y], ...], "ccw": true}
std::string polygon_to_json(const ConvexPolygon& poly);
ConvexPolygon polygon_from_json(const std::string& text);
void save_polygon(const std::string& path, const ConvexPolygon& poly);
ConvexPolygon load_polygon(const std::string& path);

// one JSON object per line: {"t", "line": {"origin", "direction"}, "result": null | {...}}
std::string transcript_to_jsonl(const Transcript& tr);
Transcript transcript_from_jsonl(const std::string& text);
void save_transcript(const std::string& path, const Transcript& tr);
Transcript load_transcript(const std::string& path);

// "ox,oy,dx,dy"
DirectedLine parse_line(const std::string& text);

std::string cloud_to_csv(const OmegaCloud& cloud);
std::string cloud_to_svg(const ConvexPolygon& poly, const OmegaCloud& cloud, int samples_per_arc = 32);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace omegaprobe
