// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/bytes.hpp"

#include <algorithm>
#include <stdexcept>

namespace agasp {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
}

} // namespace

std::string hex_encode(std::span<const std::uint8_t> data)
{
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

std::vector<std::uint8_t> hex_decode(const std::string& hex)
{
    std::string s = hex;
    if (s.rfind("0x", 0) == 0) s = s.substr(2);
    if (s.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(hex_nibble(s[2 * i]) << 4 | hex_nibble(s[2 * i + 1]));
    }
    return out;
}

bool Hash32::is_zero() const
{
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
}

std::string Hash32::hex() const
{
    return hex_encode(bytes);
}

Hash32 Hash32::from_hex(const std::string& hex)
{
    auto raw = hex_decode(hex);
    if (raw.size() != 32) throw std::invalid_argument("hash hex must be 32 bytes");
    Hash32 h;
    std::copy(raw.begin(), raw.end(), h.bytes.begin());
    return h;
}

bool Address::is_zero() const
{
    return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
}

std::string Address::hex() const
{
    return hex_encode(bytes);
}

Address Address::from_hex(const std::string& hex)
{
    auto raw = hex_decode(hex);
    if (raw.size() != 20) throw std::invalid_argument("address hex must be 20 bytes");
    Address a;
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

void ByteWriter::put_u8(std::uint8_t v)
{
    buf_.push_back(v);
}

void ByteWriter::put_u32(std::uint32_t v)
{
    for (int shift = 24; shift >= 0; shift -= 8) {
        buf_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void ByteWriter::put_u64(std::uint64_t v)
{
    for (int shift = 56; shift >= 0; shift -= 8) {
        buf_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void ByteWriter::put_u128(unsigned __int128 v)
{
    put_u64(static_cast<std::uint64_t>(v >> 64));
    put_u64(static_cast<std::uint64_t>(v));
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> data)
{
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::put_string(const std::string& s)
{
    put_u32(static_cast<std::uint32_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteWriter::put_hash(const Hash32& h)
{
    put_bytes(h.bytes);
}

void ByteWriter::put_address(const Address& a)
{
    put_bytes(a.bytes);
}

} // namespace agasp
