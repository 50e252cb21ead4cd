#pragma once

#include <string>

// Conformance programs shared between the unit suites and the acceptance
// suite.

namespace fixtures {

// Checks that every consonant other than "n" is followed by a vowel.
inline constexpr const char* kVowelCheck = R"PYL(
function solve(input) {
    s = "";
    i = 0;
    while (i < len(input)) {
        if (input[i] != "\n") {
            s = s + input[i];
        }
        i = i + 1;
    }
    i = 0;
    while (i < len(s) - 1) {
        current_char = s[i];
        next_char = s[i + 1];
        if (current_char != "n") {
            is_consonant = 1;
            if (current_char == "a" || current_char == "o"
                || current_char == "u" || current_char == "i"
                || current_char == "e") {
                is_consonant = 0;
            }
            if (is_consonant == 1) {
                is_vowel_next = 0;
                if (next_char == "a" || next_char == "o"
                    || next_char == "u" || next_char == "i"
                    || next_char == "e") {
                    is_vowel_next = 1;
                }
                if (is_vowel_next == 0) {
                    print("NO");
                    return 0;
                }
            }
        }
        i = i + 1;
    }
    print("YES");
}
)PYL";

// Returns 1 when all characters are identical, 0 otherwise; prints nothing.
inline constexpr const char* kUniformString = R"PYL(
function solve(input) {
    if (input == "") {
        return 0;
    }
    first_char = input[0];
    i = 1;
    while (i < len(input)) {
        if (input[i] != first_char) {
            return 0;
        }
        i = i + 1;
    }
    return 1;
}
)PYL";

// The canonical input-parsing prologue: split stdin into lines, then convert
// the first line digit by digit. Binds the result to `n`.
inline constexpr const char* kParsePrologue = R"PYL(
    lines = [];
    current_line = "";
    i = 0;
    line_count = 0;
    while (i < len(input)) {
        if (input[i] == "\n") {
            lines[line_count] = current_line;
            line_count = line_count + 1;
            current_line = "";
        } else {
            current_line = current_line + input[i];
        }
        i = i + 1;
    }
    if (len(current_line) > 0) {
        lines[line_count] = current_line;
    }
    s = lines[0];
    n = 0;
    j = 0;
    while (j < len(s)) {
        digit = 0;
        if (s[j] == "0") { digit = 0; }
        if (s[j] == "1") { digit = 1; }
        if (s[j] == "2") { digit = 2; }
        if (s[j] == "3") { digit = 3; }
        if (s[j] == "4") { digit = 4; }
        if (s[j] == "5") { digit = 5; }
        if (s[j] == "6") { digit = 6; }
        if (s[j] == "7") { digit = 7; }
        if (s[j] == "8") { digit = 8; }
        if (s[j] == "9") { digit = 9; }
        n = n * 10 + digit;
        j = j + 1;
    }
)PYL";

inline std::string parse_first_int_program() {
  return std::string("function solve(input) {") + kParsePrologue +
         "    print(n);\n    return 0;\n}\n";
}

// Counts index pairs (i, j), i < j, where n*(a[i]+a[j]) equals twice the
// array sum. The driver binds a = [1, 2, 3], n = 3.
inline constexpr const char* kPairCount = R"PYL(
function pair_count(a, n) {
    count = 0; i = 0; sum = 0; t = 0;
    while (t < n) {
        sum = sum + a[t];
        t = t + 1;
    }
    while (i < n) {
        j = i + 1;
        while (j < n) {
            if (n*(a[i]+a[j]) == 2*sum) {
                count=count+1;
            }
            j = j + 1;
        }
        i = i + 1;
    }
    print(count);
}
a = [];
a[0] = 1;
a[1] = 2;
a[2] = 3;
n = 3;
pair_count(a, n);
)PYL";

}  // namespace fixtures
