// Copyright 2026 The IRSM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irsm/core/archive.hpp"

#include <zlib.h>

#include <cstdint>

#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"

namespace irsm {
namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralSig = 0x06054b50;
constexpr std::size_t kEndOfCentralSize = 22;
constexpr std::string_view kPayloadPrefix = "payload/";

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kMalformedArchive, what); }

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return static_cast<std::uint16_t>(byte(at) | (byte(at + 1) << 8));
  }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return static_cast<std::uint32_t>(byte(at)) | (static_cast<std::uint32_t>(byte(at + 1)) << 8) |
           (static_cast<std::uint32_t>(byte(at + 2)) << 16) |
           (static_cast<std::uint32_t>(byte(at + 3)) << 24);
  }
  std::string_view slice(std::size_t at, std::size_t len) const {
    need(at, len);
    return bytes_.substr(at, len);
  }
  std::size_t size() const { return bytes_.size(); }

 private:
  void need(std::size_t at, std::size_t len) const {
    if (at > bytes_.size() || len > bytes_.size() - at) malformed("truncated zip structure");
  }
  unsigned byte(std::size_t at) const { return static_cast<unsigned char>(bytes_[at]); }

  std::string_view bytes_;
};

std::uint32_t crc32_of(std::string_view data) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

std::string inflate_raw(std::string_view compressed, std::size_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) malformed("inflate init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected_size) malformed("corrupt deflate stream");
  return out;
}

}  // namespace

std::string zip_write(const std::vector<ZipEntry>& entries) {
  std::string out;
  std::string central;
  for (const auto& e : entries) {
    if (e.path.size() > 0xffff || e.data.size() > 0xffffffffu) malformed("entry too large");
    const auto offset = static_cast<std::uint32_t>(out.size());
    const std::uint32_t crc = crc32_of(e.data);
    const auto size = static_cast<std::uint32_t>(e.data.size());
    const auto name_len = static_cast<std::uint16_t>(e.path.size());

    put32(out, kLocalHeaderSig);
    put16(out, 20);       // version needed
    put16(out, 0);        // flags
    put16(out, 0);        // method: stored
    put16(out, 0);        // mod time
    put16(out, 0x21);     // mod date 1980-01-01
    put32(out, crc);
    put32(out, size);
    put32(out, size);
    put16(out, name_len);
    put16(out, 0);
    out += e.path;
    out += e.data;

    put32(central, kCentralHeaderSig);
    put16(central, 20);   // made by
    put16(central, 20);   // needed
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0x21);
    put32(central, crc);
    put32(central, size);
    put32(central, size);
    put16(central, name_len);
    put16(central, 0);    // extra
    put16(central, 0);    // comment
    put16(central, 0);    // disk
    put16(central, 0);    // internal attrs
    put32(central, 0);    // external attrs
    put32(central, offset);
    central += e.path;
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, kEndOfCentralSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

std::vector<ZipEntry> zip_read(std::string_view bytes) {
  Reader r(bytes);
  if (r.size() < kEndOfCentralSize) malformed("too short for a zip archive");

  // The end record sits before an optional trailing comment of up to 64 KiB.
  std::size_t eocd = std::string_view::npos;
  const std::size_t lowest = r.size() > kEndOfCentralSize + 0xffff ? r.size() - kEndOfCentralSize - 0xffff : 0;
  for (std::size_t at = r.size() - kEndOfCentralSize + 1; at-- > lowest;) {
    if (r.u32(at) == kEndOfCentralSig && at + kEndOfCentralSize + r.u16(at + 20) == r.size()) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string_view::npos) malformed("end of central directory not found");

  const std::uint16_t count = r.u16(eocd + 10);
  const std::uint32_t cd_size = r.u32(eocd + 12);
  const std::uint32_t cd_offset = r.u32(eocd + 16);
  if (static_cast<std::size_t>(cd_offset) + cd_size > eocd) malformed("central directory out of range");

  std::vector<ZipEntry> entries;
  entries.reserve(count);
  std::size_t at = cd_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (r.u32(at) != kCentralHeaderSig) malformed("bad central directory signature");
    const std::uint16_t flags = r.u16(at + 8);
    const std::uint16_t method = r.u16(at + 10);
    const std::uint32_t crc = r.u32(at + 16);
    const std::uint32_t csize = r.u32(at + 20);
    const std::uint32_t usize = r.u32(at + 24);
    const std::uint16_t name_len = r.u16(at + 28);
    const std::uint16_t extra_len = r.u16(at + 30);
    const std::uint16_t comment_len = r.u16(at + 32);
    const std::uint32_t local = r.u32(at + 42);
    std::string name(r.slice(at + 46, name_len));
    at += 46u + name_len + extra_len + comment_len;

    if (flags & 0x1) malformed("encrypted entries are not supported");
    if (r.u32(local) != kLocalHeaderSig) malformed("bad local header signature");
    const std::size_t data_at = local + 30u + r.u16(local + 26) + r.u16(local + 28);
    const std::string_view raw = r.slice(data_at, csize);

    std::string data;
    if (method == 0) {
      if (csize != usize) malformed("stored entry size mismatch");
      data.assign(raw);
    } else if (method == 8) {
      data = inflate_raw(raw, usize);
    } else {
      malformed("unsupported compression method " + std::to_string(method));
    }
    if (crc32_of(data) != crc) malformed("CRC mismatch in '" + name + "'");
    if (name.empty() || name.back() == '/') continue;  // directory entries
    entries.push_back(ZipEntry{std::move(name), std::move(data)});
  }
  return entries;
}

std::uint64_t PackageArchive::payload_size() const {
  std::uint64_t total = 0;
  for (const auto& [_, data] : payload) total += data.size();
  return total;
}

std::string payload_digest(const PayloadFiles& files) {
  Sha256 h;
  for (const auto& [_, data] : files) h.update(data);  // std::map iterates in ascending path order
  return h.hex();
}

std::string build_package_archive(const PackageManifest& manifest, const PayloadFiles& payload) {
  std::vector<ZipEntry> entries;
  entries.push_back({"manifest.json", to_json(manifest).dump(2)});
  for (const auto& [path, data] : payload) entries.push_back({std::string(kPayloadPrefix) + path, data});
  return zip_write(entries);
}

PackageArchive read_package_archive(std::string_view bytes) {
  PackageArchive out;
  bool have_manifest = false;
  for (auto& e : zip_read(bytes)) {
    if (e.path == "manifest.json") {
      nlohmann::json doc = nlohmann::json::parse(e.data, nullptr, false);
      if (doc.is_discarded()) malformed("manifest.json is not valid JSON");
      out.manifest = validate_manifest(doc);
      have_manifest = true;
    } else if (e.path.starts_with(kPayloadPrefix)) {
      out.payload.emplace(e.path.substr(kPayloadPrefix.size()), std::move(e.data));
    } else {
      malformed("unexpected archive member '" + e.path + "'");
    }
  }
  if (!have_manifest) malformed("manifest.json missing at archive root");
  return out;
}

}  // namespace irsm
