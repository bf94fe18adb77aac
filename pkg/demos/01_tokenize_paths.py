"""
Splitting server paths into sentences
=====================================

Wordlist entries follow whatever naming convention their developers liked:
camelCase, snake_case, kebab-case, nested directories. Before any semantic
grouping can happen, each entry is split into a space-separated sentence so
that "wp-login.php" and "wp_login.php" end up looking alike.
"""
from dirclust import split_path, tokenize_all, wordlist_from_paths

paths = [
    "comments/add_comment.php",
    "UnicodeTest.txt",
    "wp-login.php",
    "wp-content/plugins/index.php",
    "libraries/joomla/github/package/gitignore.php",
    "images/menu/menu_tabs.gif",
    "XMLParser/v2/parse.jsp",
]

# split_path works on bare strings; every punctuation mark becomes its own
# token, camelCase and letter/digit boundaries split too
for p in paths:
    print(f"{p:55s} -> {' '.join(split_path(p))}")

# the same thing over a whole wordlist, keeping entry ids stable
print()
wl = wordlist_from_paths(paths)
for t in tokenize_all(wl):
    print(f"id={t.entry_id}  {t.sentence}")

# nothing is ever lost: concatenating the tokens reconstructs the entry
assert all("".join(split_path(p)) == p for p in paths)
print("\nreconstruction holds for every entry")
