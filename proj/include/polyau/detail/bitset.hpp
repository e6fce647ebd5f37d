#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polyau::detail {

// Fixed-length bitset with the shift-or operations needed for sumset sieves.
class BitSet {
public:
    explicit BitSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    void set(std::size_t i) { words_[i >> 6U] |= std::uint64_t{1} << (i & 63U); }

    bool test(std::size_t i) const { return ((words_[i >> 6U] >> (i & 63U)) & 1U) != 0; }

    bool all() const
    {
        for (std::size_t i = 0; i < size_; ++i) {
            if (!test(i)) return false;
        }
        return true;
    }

    // this |= src << shift, truncated to size().
    void or_shifted_up(const BitSet& src, std::size_t shift)
    {
        if (shift >= size_) return;
        const std::size_t word_shift = shift >> 6U;
        const unsigned bit_shift = shift & 63U;
        const std::size_t n = words_.size();
        for (std::size_t i = n; i-- > word_shift;) {
            std::uint64_t v = src.words_[i - word_shift] << bit_shift;
            if (bit_shift != 0 && i - word_shift >= 1) v |= src.words_[i - word_shift - 1] >> (64U - bit_shift);
            words_[i] |= v;
        }
        trim();
    }

    // this |= src >> shift.
    void or_shifted_down(const BitSet& src, std::size_t shift)
    {
        if (shift >= size_) return;
        const std::size_t word_shift = shift >> 6U;
        const unsigned bit_shift = shift & 63U;
        const std::size_t n = words_.size();
        for (std::size_t i = 0; i + word_shift < n; ++i) {
            std::uint64_t v = src.words_[i + word_shift] >> bit_shift;
            if (bit_shift != 0 && i + word_shift + 1 < n) v |= src.words_[i + word_shift + 1] << (64U - bit_shift);
            words_[i] |= v;
        }
        trim();
    }

    // this |= src rotated by shift (addition of shift modulo size()).
    void or_rotated(const BitSet& src, std::size_t shift)
    {
        shift %= size_;
        if (shift == 0) {
            for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= src.words_[i];
            return;
        }
        or_shifted_up(src, shift);
        or_shifted_down(src, size_ - shift);
    }

private:
    void trim()
    {
        const unsigned tail = size_ & 63U;
        if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    std::size_t size_;
    std::vector<std::uint64_t> words_;
};

} // namespace polyau::detail
