#ifndef ISRT_RECORD_HPP
#define ISRT_RECORD_HPP

#include <concepts>
#include <cstdint>
#include <type_traits>

namespace isrt {

/// Zero-width payload for key-only records.
struct NoPayload {
    friend constexpr bool operator==(NoPayload, NoPayload) noexcept { return true; }
};

/// A fixed-width unsigned key with an opaque fixed-size payload. The payload
/// is never inspected by the sorters, only carried along.
template <std::unsigned_integral K, class P = std::uint64_t>
struct Record {
    using key_type = K;
    using payload_type = P;

    K key;
    [[no_unique_address]] P payload;

    friend constexpr bool operator==(const Record&, const Record&) = default;
};

template <class R>
concept SortableRecord = std::is_trivially_copyable_v<R> && requires(const R& r) {
    typename R::key_type;
    requires std::unsigned_integral<typename R::key_type>;
    { r.key } -> std::convertible_to<typename R::key_type>;
};

template <SortableRecord R>
using key_of_t = typename R::key_type;

template <SortableRecord R>
inline constexpr unsigned key_bits_v = sizeof(key_of_t<R>) * 8;

}  // namespace isrt

#endif  // ISRT_RECORD_HPP
