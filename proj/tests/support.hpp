#pragma once

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "namegauge/corpus.hpp"

namespace testsupport {

// Writes lines to a fresh temp file and returns its path. Files accumulate
// under /tmp for the lifetime of the test run; that is fine in the sandbox.
inline std::string write_temp(const std::vector<std::string>& lines,
                              const char* tag = "corpus") {
    static int counter = 0;
    char path[128];
    std::snprintf(path, sizeof path, "/tmp/namegauge_test_%s_%d_%d.jsonl", tag, getpid(),
                  counter++);
    std::ofstream out(path);
    for (const auto& line : lines) out << line << "\n";
    return path;
}

inline namegauge::NameInstance inst(std::string record_id, int pos, std::string surname,
                                    std::vector<std::string> forenames,
                                    const char* label = nullptr, bool focal = false) {
    namegauge::NameInstance a;
    a.record_id = record_id;
    a.instance_id = record_id + "#" + std::to_string(pos);
    a.surname = std::move(surname);
    a.forenames = std::move(forenames);
    if (label) a.author_label = label;
    a.focal = focal;
    return a;
}

inline namegauge::Record record(std::string record_id, std::string title, std::string venue,
                                std::vector<namegauge::NameInstance> authors) {
    namegauge::Record r;
    r.record_id = std::move(record_id);
    r.title = std::move(title);
    r.venue = std::move(venue);
    r.authors = std::move(authors);
    return r;
}

}  // namespace testsupport
