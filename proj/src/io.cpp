#include "lx/io.hpp"

#include <fstream>
#include <sstream>

#include "lx/error.hpp"

namespace lx::io {

namespace {

constexpr char kMagic[4] = {'L', 'X', 'K', 'S'};
constexpr std::uint8_t kVersion = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += 8;
    return v;
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::vector<std::uint8_t> raw(std::size_t n) {
    need(n);
    std::vector<std::uint8_t> v(data_.begin() + pos_, data_.begin() + pos_ + n);
    pos_ += n;
    return v;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) {
    if (data_.size() - pos_ < n) fail(Errc::BadFormat, "keystream file truncated");
  }
  const std::vector<std::uint8_t>& data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_keystream(const prf::Keystream& ks) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  const std::string desc = ks.params.describe();
  if (desc.size() > 0xFFFF) fail(Errc::BadFormat, "field description too long");
  put_u16(out, static_cast<std::uint16_t>(desc.size()));
  out.insert(out.end(), desc.begin(), desc.end());
  if (ks.is_counter()) {
    out.push_back(0);
    put_u64(out, std::get<prf::CounterMode>(ks.mode).start);
  } else {
    out.push_back(1);
    for (std::uint64_t c : std::get<prf::GeometricMode>(ks.mode).generator.coeffs) {
      put_u64(out, c);
    }
  }
  put_u64(out, ks.length);
  out.insert(out.end(), ks.bits.begin(), ks.bits.end());
  return out;
}

prf::Keystream decode_keystream(const std::vector<std::uint8_t>& data) {
  Reader in(data);
  if (in.bytes(4) != std::string(kMagic, 4)) fail(Errc::BadFormat, "not a keystream file");
  if (in.u8() != kVersion) fail(Errc::BadFormat, "unsupported keystream version");
  prf::Keystream ks;
  ks.params = ff::parse_field_description(in.bytes(in.u16()));
  const std::uint8_t mode = in.u8();
  if (mode == 0) {
    ks.mode = prf::CounterMode{in.u64()};
  } else if (mode == 1) {
    ff::FieldElement g = ks.params.zero();
    for (std::uint32_t i = 0; i < ks.params.r; ++i) g.coeffs[i] = in.u64();
    ks.params.check_element(g);
    if (!ff::is_primitive(ks.params, g)) {
      fail(Errc::BadFormat, "geometric keystream generator is not primitive");
    }
    ks.mode = prf::GeometricMode{std::move(g)};
  } else {
    fail(Errc::BadFormat, "unknown keystream mode byte");
  }
  ks.length = in.u64();
  ks.bits = in.raw((ks.length + 7) / 8);
  if (!in.done()) fail(Errc::BadFormat, "trailing bytes after keystream payload");
  // Unused high bits of the final byte must be zero so encodings are unique.
  if (ks.length % 8 != 0 && !ks.bits.empty() &&
      (ks.bits.back() >> (ks.length % 8)) != 0) {
    fail(Errc::BadFormat, "nonzero padding bits in final byte");
  }
  if (ks.is_counter()) {
    const std::uint64_t start = std::get<prf::CounterMode>(ks.mode).start;
    if (start > ks.params.order || ks.length > ks.params.order - start) {
      fail(Errc::BadFormat, "counter stream extends past p^r");
    }
  } else if (ks.length < 1 || ks.length > ks.params.order - 1) {
    fail(Errc::BadFormat, "geometric stream length must lie in [1, p^r - 1]");
  }
  return ks;
}

void write_keystream_file(const std::string& path, const prf::Keystream& ks) {
  const auto data = encode_keystream(ks);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) fail(Errc::IoError, "write failed: " + path);
}

prf::Keystream read_keystream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  return decode_keystream(data);
}

std::string element_to_string(const ff::FieldElement& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (i) out << ',';
    out << a.coeffs[i];
  }
  return out.str();
}

ff::FieldElement element_from_string(const std::string& s, const ff::FieldParams& fp) {
  std::vector<std::uint64_t> coeffs;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      coeffs.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      fail(Errc::BadFormat, "bad coefficient '" + tok + "'");
    }
  }
  ff::FieldElement e{std::move(coeffs)};
  fp.check_element(e);
  return e;
}

std::string encode_key(const prf::PrfKey& key, const ff::FieldParams& fp) {
  std::ostringstream out;
  out << fp.describe() << '\n';
  out << "d=" << key.degree << '\n';
  for (const auto& c : key.coeffs) out << element_to_string(c) << '\n';
  return out.str();
}

void write_key_file(const std::string& path, const prf::PrfKey& key, const ff::FieldParams& fp) {
  write_file(path, encode_key(key, fp));
}

KeyFile parse_key(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(Errc::BadFormat, "empty key file");
  KeyFile kf{ff::parse_field_description(line), {}};
  if (!std::getline(in, line) || line.rfind("d=", 0) != 0) {
    fail(Errc::BadFormat, "key file missing d= line");
  }
  std::uint32_t degree = 0;
  try {
    degree = static_cast<std::uint32_t>(std::stoul(line.substr(2)));
  } catch (const std::exception&) {
    fail(Errc::BadFormat, "bad degree line '" + line + "'");
  }
  std::vector<ff::FieldElement> coeffs;
  for (std::uint32_t i = 0; i < degree; ++i) {
    if (!std::getline(in, line)) fail(Errc::BadFormat, "key file ends before all coefficients");
    coeffs.push_back(element_from_string(line, kf.params));
  }
  kf.key = prf::make_key(degree, std::move(coeffs), kf.params);
  return kf;
}

KeyFile read_key_file(const std::string& path) { return parse_key(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  out << data;
  if (!out) fail(Errc::IoError, "write failed: " + path);
}

}  // namespace lx::io
