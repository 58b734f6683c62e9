#include "nri/matrix.hpp"

#include <fstream>

#include "json.hpp"

namespace nri {

std::string matrix_to_json_string(const ComplexMatrix& m) {
    nlohmann::ordered_json j;
    j["dim"] = m.dim();
    std::vector<double> re, im;
    re.reserve(m.data().size());
    im.reserve(m.data().size());
    for (const auto& z : m.data()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j.dump();
}

ComplexMatrix matrix_from_json_string(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != dim * dim || im.size() != dim * dim)
        throw std::invalid_argument("matrix json: re/im length does not match dim");
    std::vector<cdouble> entries(dim * dim);
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = cdouble{re[k], im[k]};
    return ComplexMatrix(dim, std::move(entries));
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << matrix_to_json_string(m) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return matrix_from_json_string(text);
}

}  // namespace nri
