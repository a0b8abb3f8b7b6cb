#ifndef SMFKIT_NUMBER_FORMAT_HPP
#define SMFKIT_NUMBER_FORMAT_HPP

#include <string>
#include <vector>

namespace smfkit::textio {

// All numbers placed in output files go through this one formatter:
// %.12g with "-0" folded to "0". Identical inputs therefore produce
// byte-identical files.
std::string format_number(double v);

// One CSV line, LF terminated.
std::string csv_line(const std::vector<std::string>& fields);

// Writes content to path, creating parent directories. Throws
// std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace smfkit::textio

#endif
