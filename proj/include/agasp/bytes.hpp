// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace agasp {

struct Hash32 {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const Hash32&) const = default;
    bool is_zero() const;
    std::string hex() const;
    static Hash32 from_hex(const std::string& hex);
};

// 20-byte opaque account identifier. Equality is bytewise.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    auto operator<=>(const Address&) const = default;
    bool is_zero() const;
    std::string hex() const;
    static Address from_hex(const std::string& hex);
};

std::string hex_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> hex_decode(const std::string& hex);

// Canonical serialization: fixed field order, big-endian fixed-width
// integers, length-prefixed variable fields. Hashes of domain objects are
// computed over exactly these bytes.
class ByteWriter {
public:
    void put_u8(std::uint8_t v);
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_u128(unsigned __int128 v);
    void put_bytes(std::span<const std::uint8_t> data);
    void put_string(const std::string& s); // u32 length prefix
    void put_hash(const Hash32& h);
    void put_address(const Address& a);

    std::span<const std::uint8_t> data() const { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

} // namespace agasp
