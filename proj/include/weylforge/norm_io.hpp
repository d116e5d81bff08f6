#pragma once

#include <map>
#include <string>

#include "weylforge/normforge.hpp"

namespace weylforge {

/// Parses a norm spec, or the "spec" member of a compiled norm file.
/// Malformed JSON throws Parse; schema violations throw BadParams.
NormSpec parse_norm_spec(const std::string& text);
std::string norm_spec_to_json(const NormSpec& spec);

/// Compiled norm: the resolved spec plus frame and summary fields.
std::string norm_to_json(const Norm& norm);
/// Loads a compiled norm (or a fully resolved spec) without any sampling.
Norm load_norm(const std::string& text, const NormOptions& opts = {});

std::string certificate_to_json(const ConvexityCertificate& cert,
                                const std::map<std::string, double>& extra = {});

}  // namespace weylforge
