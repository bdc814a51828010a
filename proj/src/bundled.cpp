#include "semireal/bundled.hpp"

#include <algorithm>
#include <map>

#include "semireal/errors.hpp"

namespace semireal {

namespace {

// Kraft sum 31/32; two programs share output 1 so masses accumulate, and
// the late long program outruns the early short one only at high fuel.
const std::map<std::string, std::string>& machine_texts() {
  static const std::map<std::string, std::string> m = {
      {"default",
       "# six halting programs, Kraft sum 31/32\n"
       "program:0 output:1 time:2\n"
       "program:10 output:2 time:4\n"
       "program:110 output:3 time:8\n"
       "program:1110 output:1 time:16\n"
       "program:11110 output:5 time:32\n"
       "program:11111 output:8 time:3\n"},
      {"selftiming",
       "# length-L program prints 2^L and takes exactly that long\n"
       "program:0 output:2 time:2\n"
       "program:10 output:4 time:4\n"
       "program:110 output:8 time:8\n"
       "program:1110 output:16 time:16\n"
       "program:11110 output:32 time:32\n"
       "program:111110 output:64 time:64\n"
       "program:1111110 output:128 time:128\n"
       "program:11111110 output:256 time:256\n"},
      {"geom",
       "# output i gets mass 2^-(i+1)\n"
       "program:0 output:0 time:1\n"
       "program:10 output:1 time:2\n"
       "program:110 output:2 time:3\n"
       "program:1110 output:3 time:4\n"
       "program:11110 output:4 time:5\n"
       "program:111110 output:5 time:6\n"
       "program:1111110 output:6 time:7\n"
       "program:11111110 output:7 time:8\n"}};
  return m;
}

const std::map<std::string, std::string>& series_texts() {
  static const std::map<std::string, std::string> m = {
      // geometric increments closed off to reach 1/2 exactly
      {"geom_half",
       "kind series\n"
       "0 1/4\n1 1/8\n2 1/16\n3 1/32\n4 1/64\n5 1/128\n6 1/256\n7 1/512\n"
       "8 1/1024\n9 1/2048\n10 1/4096\n11 1/8192\n12 1/8192\n"},
      // powers of 1/4 closed off to reach 1/3 exactly
      {"geom_third",
       "kind series\n"
       "0 1/4\n1 1/16\n2 1/64\n3 1/256\n4 1/1024\n5 1/3072\n"},
      // a negative opening term, total 1/4
      {"neg_start",
       "kind series\n"
       "0 -1/2\n1 1/4\n2 1/4\n3 1/4\n"},
      // strictly increasing, attains 1/2
      {"seq_half",
       "kind sequence\n"
       "0 1/4\n1 3/8\n2 7/16\n3 15/32\n4 31/64\n5 1/2\n"},
      // strictly increasing toward 1, stops at 255/256
      {"seq_one",
       "kind sequence\n"
       "0 1/2\n1 3/4\n2 7/8\n3 15/16\n4 31/32\n5 63/64\n6 127/128\n7 255/256\n"},
      // telescoping 1/(i+2)(i+3), total 1/2 - 1/13 = 11/26
      {"harmonicish",
       "kind series\n"
       "0 1/6\n1 1/12\n2 1/20\n3 1/30\n4 1/42\n5 1/56\n6 1/72\n7 1/90\n"
       "8 1/110\n9 1/132\n"}};
  return m;
}

const std::map<std::string, std::string>& cover_texts() {
  static const std::map<std::string, std::string> m = {
      {"unit", "0/1 1/1 open\n"},
      {"around_half", "7/16 9/16 open\n"},
      {"pair_abut",
       "0/1 1/2 open\n"
       "1/2 3/4 open\n"},
      {"tiny",
       "15/32 17/32 open\n"
       "31/64 33/64 closed\n"}};
  return m;
}

template <typename M>
std::vector<std::string> keys(const M& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

template <typename M>
const std::string& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end())
    throw DomainError("unknown bundled " + std::string(what) + " '" + name + "'");
  return it->second;
}

// bundled:NAME strips to NAME; a bare corpus name counts as bundled too
template <typename M>
const std::string* resolve_text(const M& m, const std::string& arg) {
  if (arg.rfind("bundled:", 0) == 0) return &lookup(m, arg.substr(8), "name");
  auto it = m.find(arg);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

std::vector<std::string> bundled_machine_names() { return keys(machine_texts()); }
std::vector<std::string> bundled_series_names() { return keys(series_texts()); }
std::vector<std::string> bundled_cover_names() { return keys(cover_texts()); }

const std::string& bundled_machine_text(const std::string& name) {
  return lookup(machine_texts(), name, "machine");
}
const std::string& bundled_series_text(const std::string& name) {
  return lookup(series_texts(), name, "series");
}
const std::string& bundled_cover_text(const std::string& name) {
  return lookup(cover_texts(), name, "cover");
}

Machine bundled_machine(const std::string& name) {
  return load_machine(bundled_machine_text(name));
}
LscReal bundled_series(const std::string& name) {
  return load_lsc(bundled_series_text(name));
}
Cover bundled_cover(const std::string& name) {
  return load_cover(bundled_cover_text(name));
}

Machine resolve_machine(const std::string& arg) {
  if (const std::string* t = resolve_text(machine_texts(), arg)) return load_machine(*t);
  return load_machine_file(arg);
}
LscReal resolve_series(const std::string& arg) {
  if (const std::string* t = resolve_text(series_texts(), arg)) return load_lsc(*t);
  return load_lsc_file(arg);
}
Cover resolve_cover(const std::string& arg) {
  if (const std::string* t = resolve_text(cover_texts(), arg)) return load_cover(*t);
  return load_cover_file(arg);
}

}  // namespace semireal
