#include "magnls/snapshot.hpp"

#include <bit>
#include <fstream>

#include "json.hpp"

namespace magnls {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace {

using ordered_json = nlohmann::ordered_json;

void write_header_and_block(std::ofstream& out, const Grid& g, int components) {
    ordered_json header;
    header["dim"] = g.dim();
    header["n"] = g.n();
    header["L"] = g.extent();
    header["components"] = components;
    header["layout"] = "x1-fastest";
    out << header.dump() << "\n";
}

void write_values(std::ofstream& out, const std::vector<c64>& values) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(c64)));
}

struct Header {
    Grid grid;
    int components;
};

Header read_header(std::ifstream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("snapshot " + path + ": missing header");
    ordered_json header = ordered_json::parse(line, nullptr, false);
    if (header.is_discarded()) throw ConfigError("snapshot " + path + ": bad JSON header");
    for (const char* key : {"dim", "n", "L", "components", "layout"})
        if (!header.contains(key))
            throw ConfigError("snapshot " + path + ": header missing '" + key + "'");
    if (header["layout"] != "x1-fastest")
        throw ConfigError("snapshot " + path + ": unsupported layout");
    Grid g(header["dim"].get<int>(), header["n"].get<std::size_t>(), header["L"].get<double>());
    return {g, header["components"].get<int>()};
}

void read_values(std::ifstream& in, std::vector<c64>& values, const std::string& path) {
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(c64)));
    if (!in) throw ConfigError("snapshot " + path + ": truncated data block");
}

}  // namespace

void write_snapshot(const std::string& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write snapshot " + path);
    write_header_and_block(out, f.grid(), 1);
    write_values(out, f.values());
}

void write_snapshot(const std::string& path, const SpinorField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write snapshot " + path);
    write_header_and_block(out, f.grid(), 2);
    write_values(out, f.up().values());
    write_values(out, f.down().values());
}

ScalarField read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read snapshot " + path);
    Header h = read_header(in, path);
    if (h.components != 1) throw ConfigError("snapshot " + path + ": expected 1 component");
    ScalarField f(h.grid);
    read_values(in, f.values(), path);
    return f;
}

SpinorField read_spinor_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read snapshot " + path);
    Header h = read_header(in, path);
    if (h.components != 2) throw ConfigError("snapshot " + path + ": expected 2 components");
    SpinorField f(h.grid);
    read_values(in, f.up().values(), path);
    read_values(in, f.down().values(), path);
    return f;
}

ScalarField read_snapshot(const std::string& path, const Grid& expect) {
    ScalarField f = read_snapshot(path);
    if (f.grid() != expect)
        throw ConfigError("snapshot " + path + ": grid does not match the configured grid");
    return f;
}

}  // namespace magnls
