#!/usr/bin/env python3
"""Generate the bundled STTS-tagged German corpora.

The corpora are synthetic: sentences come from a small grammar of German
newspaper and administrative prose, so every tag is known by construction.
Digit numerals are tagged CARD in the output, as in corpora annotated
before the CARDNUM tag existed.

Usage: gen_corpus.py OUT_DIR
Writes news.vrt (about 20k tokens) and admin.vrt (about 4k tokens).
"""

import random
import sys
from pathlib import Path

# ---------------------------------------------------------------- lexicon

# (singular, plural, gender); gender in m f n
NOUNS = [
    ("Regierung", "Regierungen", "f"), ("Stadt", "Städte", "f"), ("Minister", "Minister", "m"),
    ("Jahr", "Jahre", "n"), ("Prozent", "Prozent", "n"), ("Mark", "Mark", "f"),
    ("Polizei", "Polizeien", "f"), ("Bürgermeister", "Bürgermeister", "m"), ("Partei", "Parteien", "f"),
    ("Land", "Länder", "n"), ("Woche", "Wochen", "f"), ("Kind", "Kinder", "n"),
    ("Frau", "Frauen", "f"), ("Mann", "Männer", "m"), ("Haus", "Häuser", "n"),
    ("Schule", "Schulen", "f"), ("Firma", "Firmen", "f"), ("Unternehmen", "Unternehmen", "n"),
    ("Arbeit", "Arbeiten", "f"), ("Plan", "Pläne", "m"), ("Projekt", "Projekte", "n"),
    ("Gericht", "Gerichte", "n"), ("Bank", "Banken", "f"), ("Preis", "Preise", "m"),
    ("Vertrag", "Verträge", "m"), ("Gespräch", "Gespräche", "n"), ("Frage", "Fragen", "f"),
    ("Million", "Millionen", "f"), ("Stunde", "Stunden", "f"), ("Tag", "Tage", "m"),
    ("Monat", "Monate", "m"), ("Zeit", "Zeiten", "f"), ("Geld", "Gelder", "n"),
    ("Spiel", "Spiele", "n"), ("Mannschaft", "Mannschaften", "f"), ("Trainer", "Trainer", "m"),
    ("Verein", "Vereine", "m"), ("Kirche", "Kirchen", "f"), ("Straße", "Straßen", "f"),
    ("Wohnung", "Wohnungen", "f"), ("Mieter", "Mieter", "m"), ("Gemeinde", "Gemeinden", "f"),
    ("Kreis", "Kreise", "m"), ("Landrat", "Landräte", "m"), ("Ausschuss", "Ausschüsse", "m"),
    ("Bericht", "Berichte", "m"), ("Zeitung", "Zeitungen", "f"), ("Leser", "Leser", "m"),
    ("Bürger", "Bürger", "m"), ("Gewerkschaft", "Gewerkschaften", "f"), ("Lohn", "Löhne", "m"),
    ("Stelle", "Stellen", "f"), ("Arbeitsplatz", "Arbeitsplätze", "m"), ("Betrieb", "Betriebe", "m"),
    ("Kosten", "Kosten", "f"), ("Steuer", "Steuern", "f"), ("Haushalt", "Haushalte", "m"),
    ("Opposition", "Oppositionen", "f"), ("Koalition", "Koalitionen", "f"), ("Wahl", "Wahlen", "f"),
    ("Kandidat", "Kandidaten", "m"), ("Sprecher", "Sprecher", "m"), ("Sprecherin", "Sprecherinnen", "f"),
    ("Angabe", "Angaben", "f"), ("Ende", "Enden", "n"), ("Anfang", "Anfänge", "m"),
    ("Student", "Studenten", "m"), ("Universität", "Universitäten", "f"), ("Professor", "Professoren", "m"),
    ("Arzt", "Ärzte", "m"), ("Krankenhaus", "Krankenhäuser", "n"), ("Patient", "Patienten", "m"),
    ("Auto", "Autos", "n"), ("Bahn", "Bahnen", "f"), ("Zug", "Züge", "m"),
    ("Flughafen", "Flughäfen", "m"), ("Verkehr", "Verkehre", "m"), ("Unfall", "Unfälle", "m"),
    ("Feuerwehr", "Feuerwehren", "f"), ("Täter", "Täter", "m"), ("Opfer", "Opfer", "n"),
    ("Richter", "Richter", "m"), ("Anwalt", "Anwälte", "m"), ("Prozess", "Prozesse", "m"),
    ("Künstler", "Künstler", "m"), ("Ausstellung", "Ausstellungen", "f"), ("Museum", "Museen", "n"),
    ("Theater", "Theater", "n"), ("Konzert", "Konzerte", "n"), ("Publikum", "Publika", "n"),
    ("Buch", "Bücher", "n"), ("Film", "Filme", "m"), ("Musik", "Musiken", "f"),
    ("Markt", "Märkte", "m"), ("Handel", "Handel", "m"), ("Wirtschaft", "Wirtschaften", "f"),
    ("Industrie", "Industrien", "f"), ("Export", "Exporte", "m"), ("Umsatz", "Umsätze", "m"),
    ("Gewinn", "Gewinne", "m"), ("Verlust", "Verluste", "m"), ("Aktie", "Aktien", "f"),
    ("Vorstand", "Vorstände", "m"), ("Chef", "Chefs", "m"), ("Mitarbeiter", "Mitarbeiter", "m"),
    ("Programm", "Programme", "n"), ("Gesetz", "Gesetze", "n"), ("Antrag", "Anträge", "m"),
    ("Entscheidung", "Entscheidungen", "f"), ("Forderung", "Forderungen", "f"), ("Kritik", "Kritiken", "f"),
    ("Streit", "Streite", "m"), ("Lösung", "Lösungen", "f"), ("Ziel", "Ziele", "n"),
    ("Grund", "Gründe", "m"), ("Ergebnis", "Ergebnisse", "n"), ("Erfolg", "Erfolge", "m"),
    ("Problem", "Probleme", "n"), ("Hilfe", "Hilfen", "f"), ("Mittel", "Mittel", "n"),
    ("Zukunft", "Zukünfte", "f"), ("Geschichte", "Geschichten", "f"), ("Krieg", "Kriege", "m"),
    ("Frieden", "Frieden", "m"), ("Soldat", "Soldaten", "m"), ("Grenze", "Grenzen", "f"),
    ("Flüchtling", "Flüchtlinge", "m"), ("Lager", "Lager", "n"), ("Familie", "Familien", "f"),
    ("Vater", "Väter", "m"), ("Mutter", "Mütter", "f"), ("Sohn", "Söhne", "m"),
    ("Tochter", "Töchter", "f"), ("Leben", "Leben", "n"), ("Welt", "Welten", "f"),
    ("Gebäude", "Gebäude", "n"), ("Platz", "Plätze", "m"), ("Park", "Parks", "m"),
    ("Wasser", "Wasser", "n"), ("Umwelt", "Umwelten", "f"), ("Energie", "Energien", "f"),
    ("Strom", "Ströme", "m"), ("Müll", "Müll", "m"), ("Anlage", "Anlagen", "f"),
    ("Bau", "Bauten", "m"), ("Fläche", "Flächen", "f"), ("Gebiet", "Gebiete", "n"),
    ("Region", "Regionen", "f"), ("Bund", "Bünde", "m"), ("Staat", "Staaten", "m"),
    ("Rat", "Räte", "m"), ("Sitzung", "Sitzungen", "f"), ("Versammlung", "Versammlungen", "f"),
    ("Mitglied", "Mitglieder", "n"), ("Vorsitzende", "Vorsitzenden", "m"), ("Fraktion", "Fraktionen", "f"),
    ("Abgeordnete", "Abgeordneten", "m"), ("Präsident", "Präsidenten", "m"), ("Kanzler", "Kanzler", "m"),
    ("Behörde", "Behörden", "f"), ("Amt", "Ämter", "n"), ("Verwaltung", "Verwaltungen", "f"),
    ("Menge", "Mengen", "f"), ("Zahl", "Zahlen", "f"), ("Teil", "Teile", "m"),
    ("Mensch", "Menschen", "m"), ("Person", "Personen", "f"), ("Leute", "Leute", "f"),
    ("Einwohner", "Einwohner", "m"), ("Gast", "Gäste", "m"), ("Besucher", "Besucher", "m"),
    ("Saison", "Saisons", "f"), ("Tor", "Tore", "n"), ("Punkt", "Punkte", "m"),
    ("Sieg", "Siege", "m"), ("Niederlage", "Niederlagen", "f"), ("Spieler", "Spieler", "m"),
    ("Koch", "Köche", "m"), ("Bauer", "Bauern", "m"), ("Fischer", "Fischer", "m"),
    ("Weg", "Wege", "m"), ("Raum", "Räume", "m"), ("Wald", "Wälder", "m"),
    ("Abend", "Abende", "m"), ("Morgen", "Morgen", "m"), ("Nacht", "Nächte", "f"),
]

# compound modifiers (with linking element); heads are taken from NOUNS
MODIFIERS = [
    "Verkehrs", "Landes", "Stadt", "Bundes", "Arbeits", "Wohnungs", "Umwelt", "Kultur",
    "Sport", "Schul", "Kinder", "Jugend", "Sozial", "Finanz", "Haushalts", "Wirtschafts",
    "Bau", "Miet", "Energie", "Müll", "Polizei", "Kirchen", "Gewerkschafts", "Partei",
    "Regierungs", "Verwaltungs", "Straßen", "Bahn", "Flughafen", "Kranken", "Familien",
    "Frauen", "Friedens", "Kriegs", "Grenz", "Flüchtlings", "Handels", "Markt", "Export",
    "Steuer", "Lohn", "Preis", "Wasser", "Wald", "Sommer", "Winter", "Nacht", "Abend",
    "Rathaus", "Kreis", "Gemeinde", "Verbraucher", "Bürger", "Studenten", "Theater", "Musik",
    "Film", "Kunst", "Zeitungs", "Landwirtschafts", "Gesundheits", "Sicherheits", "Forschungs",
    "Bildungs", "Renten", "Tarif", "Bezirks", "Ausländer", "Gefängnis", "Strom", "Gas",
]

# (surface, tag) fixed tokens: first names, surnames, places, organizations
FIRST_NAMES = [
    "Helmut", "Hans", "Peter", "Klaus", "Michael", "Thomas", "Wolfgang", "Werner", "Gerhard",
    "Maria", "Anna", "Ursula", "Monika", "Renate", "Petra", "Sabine", "Karin", "Brigitte",
    "Jürgen", "Dieter", "Rudolf", "Heinz", "Manfred", "Joschka", "Oskar", "Rita", "Heide",
]
SURNAMES = [
    "Müller", "Schmidt", "Schneider", "Fischer", "Weber", "Meyer", "Wagner", "Becker", "Schulz",
    "Hoffmann", "Koch", "Bauer", "Richter", "Klein", "Wolf", "Schröder", "Neumann", "Schwarz",
    "Kohl", "Lafontaine", "Scharping", "Waigel", "Kinkel", "Blüm", "Süssmuth", "Eichel", "Wallmann",
]
PLACES = [
    "Frankfurt", "Bonn", "Berlin", "Hessen", "Wiesbaden", "Offenbach", "Darmstadt", "Hanau",
    "Mainz", "Köln", "München", "Hamburg", "Stuttgart", "Kassel", "Gießen", "Marburg",
    "Deutschland", "Frankreich", "Europa", "Amerika", "Russland", "Polen", "Bosnien", "Israel",
    "Sachsenhausen", "Bockenheim", "Höchst", "Eschborn", "Bad Homburg".split()[0], "Oberursel",
]
ORGS = ["SPD", "CDU", "FDP", "Grünen", "IG", "UNO", "Nato", "EU", "Bundesbank", "Lufthansa", "Siemens", "Hoechst"]

SYLL_A = ["Bran", "Kall", "Ost", "Wer", "Hal", "Lin", "Ro", "Sten", "Wald", "Hart", "Kess", "Bir",
          "Mar", "Dorn", "Fel", "Gro", "Hen", "Lau", "Pet", "Rei", "Sei", "Tor", "Vol", "Zim"]
SYLL_B = ["dauer", "weit", "hagen", "mann", "berg", "ecker", "ler", "ing", "au", "ner", "ke",
          "stein", "bach", "feld", "hoff", "mer", "witz", "ski", "er", "rich", "horst", "heim"]

# verbs: inf, pres3sg, past3sg, past3pl, pp, separable particle, transitive
VERBS = [
    ("sagen", "sagt", "sagte", "sagten", "gesagt", None, True),
    ("fordern", "fordert", "forderte", "forderten", "gefordert", None, True),
    ("planen", "plant", "plante", "planten", "geplant", None, True),
    ("zeigen", "zeigt", "zeigte", "zeigten", "gezeigt", None, True),
    ("suchen", "sucht", "suchte", "suchten", "gesucht", None, True),
    ("bauen", "baut", "baute", "bauten", "gebaut", None, True),
    ("kaufen", "kauft", "kaufte", "kauften", "gekauft", None, True),
    ("brauchen", "braucht", "brauchte", "brauchten", "gebraucht", None, True),
    ("kritisieren", "kritisiert", "kritisierte", "kritisierten", "kritisiert", None, True),
    ("diskutieren", "diskutiert", "diskutierte", "diskutierten", "diskutiert", None, True),
    ("finanzieren", "finanziert", "finanzierte", "finanzierten", "finanziert", None, True),
    ("erklären", "erklärt", "erklärte", "erklärten", "erklärt", None, True),
    ("verkaufen", "verkauft", "verkaufte", "verkauften", "verkauft", None, True),
    ("besuchen", "besucht", "besuchte", "besuchten", "besucht", None, True),
    ("erhöhen", "erhöht", "erhöhte", "erhöhten", "erhöht", None, True),
    ("verlangen", "verlangt", "verlangte", "verlangten", "verlangt", None, True),
    ("erreichen", "erreicht", "erreichte", "erreichten", "erreicht", None, True),
    ("bestätigen", "bestätigt", "bestätigte", "bestätigten", "bestätigt", None, True),
    ("entwickeln", "entwickelt", "entwickelte", "entwickelten", "entwickelt", None, True),
    ("unterstützen", "unterstützt", "unterstützte", "unterstützten", "unterstützt", None, True),
    ("beschließen", "beschließt", "beschloss", "beschlossen", "beschlossen", None, True),
    ("übernehmen", "übernimmt", "übernahm", "übernahmen", "übernommen", None, True),
    ("gewinnen", "gewinnt", "gewann", "gewannen", "gewonnen", None, True),
    ("verlieren", "verliert", "verlor", "verloren", "verloren", None, True),
    ("bekommen", "bekommt", "bekam", "bekamen", "bekommen", None, True),
    ("sehen", "sieht", "sah", "sahen", "gesehen", None, True),
    ("geben", "gibt", "gab", "gaben", "gegeben", None, True),
    ("nehmen", "nimmt", "nahm", "nahmen", "genommen", None, True),
    ("finden", "findet", "fand", "fanden", "gefunden", None, True),
    ("halten", "hält", "hielt", "hielten", "gehalten", None, True),
    ("bringen", "bringt", "brachte", "brachten", "gebracht", None, True),
    ("führen", "führt", "führte", "führten", "geführt", None, True),
    ("lehnen", "lehnt", "lehnte", "lehnten", "abgelehnt", "ab", True),
    ("kündigen", "kündigt", "kündigte", "kündigten", "angekündigt", "an", True),
    ("stellen", "stellt", "stellte", "stellten", "vorgestellt", "vor", True),
    ("nehmen", "nimmt", "nahm", "nahmen", "aufgenommen", "auf", True),
    ("führen", "führt", "führte", "führten", "eingeführt", "ein", True),
    ("bauen", "baut", "baute", "bauten", "ausgebaut", "aus", True),
    ("legen", "legt", "legte", "legten", "vorgelegt", "vor", True),
    ("arbeiten", "arbeitet", "arbeitete", "arbeiteten", "gearbeitet", None, False),
    ("leben", "lebt", "lebte", "lebten", "gelebt", None, False),
    ("wohnen", "wohnt", "wohnte", "wohnten", "gewohnt", None, False),
    ("warten", "wartet", "wartete", "warteten", "gewartet", None, False),
    ("protestieren", "protestiert", "protestierte", "protestierten", "protestiert", None, False),
    ("reagieren", "reagiert", "reagierte", "reagierten", "reagiert", None, False),
    ("steigen", "steigt", "stieg", "stiegen", "gestiegen", None, False),
    ("sinken", "sinkt", "sank", "sanken", "gesunken", None, False),
    ("kommen", "kommt", "kam", "kamen", "gekommen", None, False),
    ("gehen", "geht", "ging", "gingen", "gegangen", None, False),
    ("bleiben", "bleibt", "blieb", "blieben", "geblieben", None, False),
    ("stehen", "steht", "stand", "standen", "gestanden", None, False),
    ("liegen", "liegt", "lag", "lagen", "gelegen", None, False),
    ("stimmen", "stimmt", "stimmte", "stimmten", "zugestimmt", "zu", False),
    ("nehmen", "nimmt", "nahm", "nahmen", "teilgenommen", "teil", False),
    ("halten", "hält", "hielt", "hielten", "festgehalten", "fest", True),
    ("weisen", "weist", "wies", "wiesen", "hingewiesen", "hin", False),
    ("schließen", "schließt", "schloss", "schlossen", "abgeschlossen", "ab", True),
    ("rufen", "ruft", "rief", "riefen", "aufgerufen", "auf", False),
    ("setzen", "setzt", "setzte", "setzten", "eingesetzt", "ein", True),
    ("sehen", "sieht", "sah", "sahen", "vorgesehen", "vor", True),
    ("treten", "tritt", "trat", "traten", "zurückgetreten", "zurück", False),
]
# verbs taking a dass-clause
SAY_VERBS = [v for v in VERBS if v[0] in ("sagen", "erklären", "bestätigen", "fordern", "kritisieren", "verlangen")]
INTRANSITIVE_SEIN = {"kommen", "gehen", "bleiben", "steigen", "sinken"}

# rare verbs only built for unknown-word pressure: stem + regular endings
RARE_VERB_STEMS = ["renovier", "sanier", "privatisier", "subventionier", "blockier", "boykottier",
                   "demonstrier", "evakuier", "inform", "modernisier", "reformier", "stabilisier",
                   "koordinier", "dokumentier", "regulier", "attackier", "rekrutier", "engagier",
                   "akzeptier", "analysier", "blamier", "dementier", "dominier", "eskalier",
                   "exportier", "favorisier", "garantier", "halbier", "ignorier", "integrier",
                   "investier", "isolier", "kassier", "kommentier", "kompensier", "konzentrier",
                   "kontrollier", "korrigier", "marschier", "mobilisier", "nominier", "okkupier",
                   "passier", "plädier", "produzier", "profitier", "provozier", "qualifizier",
                   "rangier", "rasier", "registrier", "reserviert", "resignier", "restaurier",
                   "riskier", "sortier", "spekulier", "stationier", "studier", "tolerier",
                   "transportier", "trainier", "verzeichn", "verdopp", "verhandel", "verringer"]

ADJECTIVES = [
    "neu", "groß", "klein", "alt", "jung", "stark", "deutsch", "politisch", "wirtschaftlich",
    "öffentlich", "sozial", "wichtig", "schwierig", "erfolgreich", "bekannt", "gut", "schnell",
    "klar", "frei", "international", "europäisch", "amerikanisch", "städtisch", "hessisch",
    "hoch", "lang", "weit", "letzt", "erst", "nächst", "ganz", "eigen", "besonder", "ander",
    "hart", "schwer", "teuer", "billig", "offen", "gemeinsam", "privat", "staatlich", "kritisch",
    "zuständig", "möglich", "notwendig", "sicher", "früh", "spät", "einzig", "ehemalig", "grün",
]
ATTR_STEM = {"hoch": "hoh", "teuer": "teur"}
PRED_ONLY = {"letzt", "erst", "nächst", "besonder", "ander", "einzig", "ehemalig", "eigen"}
RARE_ADJ_BASES = ["kommunal", "regional", "national", "digital", "zentral", "kulturell", "finanziell",
                  "industriell", "traditionell", "medizinisch", "juristisch", "technisch", "ökologisch",
                  "historisch", "praktisch", "realistisch", "kontrovers", "umstritten", "wesentlich",
                  "erheblich", "zusätzlich", "vorläufig", "endgültig", "bundesweit", "landesweit",
                  "sozialdemokratisch", "christdemokratisch", "liberal", "konservativ", "radikal",
                  "marode", "stabil", "aktuell", "brisant", "dramatisch", "drastisch", "effektiv",
                  "enorm", "extrem", "fatal", "frostig", "gefährlich", "gesetzlich", "günstig",
                  "heftig", "jährlich", "katastrophal", "knapp", "künftig", "lokal", "massiv",
                  "monatlich", "mündlich", "nördlich", "östlich", "prominent", "rechtlich",
                  "riesig", "ruhig", "schriftlich", "seltsam", "sportlich", "südlich", "tariflich",
                  "tödlich", "unklar", "vorsichtig", "westlich", "zentral", "zuverlässig"]

ADVERBS = ["auch", "nur", "noch", "bereits", "jetzt", "heute", "sehr", "schon", "wieder", "immer",
           "gestern", "morgen", "damals", "bisher", "allerdings", "jedoch", "etwa", "rund", "fast",
           "vor allem".split()[0], "dort", "hier", "dann", "zunächst", "inzwischen", "offenbar",
           "vermutlich", "kaum", "mehr", "weiter", "zudem", "außerdem", "deshalb", "trotzdem"]
WEEKDAYS = ["Montag", "Dienstag", "Mittwoch", "Donnerstag", "Freitag", "Samstag", "Sonntag"]
MONTHS = ["Januar", "Februar", "März", "April", "Mai", "Juni", "Juli", "August", "September",
          "Oktober", "November", "Dezember"]
NUM_WORDS = ["zwei", "drei", "vier", "fünf", "sechs", "sieben", "acht", "zehn", "zwölf", "zwanzig",
             "hundert", "tausend", "dreißig", "fünfzig"]

DEF = {"nom": {"m": "der", "f": "die", "n": "das", "p": "die"},
       "acc": {"m": "den", "f": "die", "n": "das", "p": "die"},
       "dat": {"m": "dem", "f": "der", "n": "dem", "p": "den"},
       "gen": {"m": "des", "f": "der", "n": "des", "p": "der"}}
INDEF = {"nom": {"m": "ein", "f": "eine", "n": "ein"},
         "acc": {"m": "einen", "f": "eine", "n": "ein"},
         "dat": {"m": "einem", "f": "einer", "n": "einem"},
         "gen": {"m": "eines", "f": "einer", "n": "eines"}}
DEMO = {"nom": {"m": "dieser", "f": "diese", "n": "dieses", "p": "diese"},
        "acc": {"m": "diesen", "f": "diese", "n": "dieses", "p": "diese"},
        "dat": {"m": "diesem", "f": "dieser", "n": "diesem", "p": "diesen"},
        "gen": {"m": "dieses", "f": "dieser", "n": "dieses", "p": "dieser"}}
POSS = {"nom": {"m": "", "f": "e", "n": "", "p": "e"},
        "acc": {"m": "en", "f": "e", "n": "", "p": "e"},
        "dat": {"m": "em", "f": "er", "n": "em", "p": "en"},
        "gen": {"m": "es", "f": "er", "n": "es", "p": "er"}}
WEAK = {"nom": {"m": "e", "f": "e", "n": "e", "p": "en"},
        "acc": {"m": "en", "f": "e", "n": "e", "p": "en"},
        "dat": {"m": "en", "f": "en", "n": "en", "p": "en"},
        "gen": {"m": "en", "f": "en", "n": "en", "p": "en"}}
MIXED = {"nom": {"m": "er", "f": "e", "n": "es"},
         "acc": {"m": "en", "f": "e", "n": "es"},
         "dat": {"m": "en", "f": "en", "n": "en"},
         "gen": {"m": "en", "f": "en", "n": "en"}}
STRONG_PL = {"nom": "e", "acc": "e", "dat": "en", "gen": "er"}

PREP_DAT = ["mit", "nach", "bei", "aus", "von", "seit", "zu", "gegenüber"]
PREP_ACC = ["für", "gegen", "durch", "ohne", "um"]
PREP_TWO = ["in", "an", "auf", "über", "unter", "vor", "hinter", "neben", "zwischen"]
APPRART = {("in", "m"): "im", ("in", "n"): "im", ("an", "m"): "am", ("an", "n"): "am",
           ("zu", "m"): "zum", ("zu", "n"): "zum", ("zu", "f"): "zur", ("von", "m"): "vom",
           ("von", "n"): "vom", ("bei", "m"): "beim", ("bei", "n"): "beim"}


class Gen:
    def __init__(self, seed, style):
        self.r = random.Random(seed)
        self.style = style
        n = len(NOUNS)
        self.noun_weights = [1.0 / (i + 1) ** 0.8 for i in range(n)]
        self.rare_names = [self.r.choice(SYLL_A) + self.r.choice(SYLL_B) for _ in range(400)]

    # ------------------------------------------------------------ helpers
    def p(self, x):
        return self.r.random() < x

    def pick(self, xs):
        return self.r.choice(xs)

    def noun(self):
        """Returns (sg, pl, gender). Sometimes a fresh compound."""
        base = self.r.choices(NOUNS, weights=self.noun_weights)[0]
        if self.p(0.28 if self.style == "news" else 0.35):
            mod = self.pick(MODIFIERS)
            sg, pl, g = base
            if base[0] in ("Leute", "Kosten", "Angabe", "Million", "Prozent", "Mark"):
                return base
            return (mod + sg.lower(), mod + pl.lower(), g)
        return base

    def adjective(self, case, gender, plural, det):
        if self.p(0.12):
            base = self.pick(RARE_ADJ_BASES)
        else:
            base = self.pick(ADJECTIVES)
        stem = ATTR_STEM.get(base, base)
        if stem.endswith("e"):
            stem = stem[:-1]
        if det == "def":
            end = WEAK[case]["p" if plural else gender]
        elif det == "indef" and not plural:
            end = MIXED[case][gender]
        elif plural:
            end = STRONG_PL[case]
        else:
            end = "e"
        return (stem + end, "ADJA")

    def number_token(self):
        k = self.r.random()
        if k < 0.35:
            return (str(self.r.randint(2, 99)), "CARD")
        if k < 0.55:
            return (str(self.r.randint(100, 999)), "CARD")
        if k < 0.7:
            return ("%d.%03d" % (self.r.randint(1, 99), self.r.randint(0, 999)), "CARD")
        if k < 0.8:
            return ("%d,%d" % (self.r.randint(1, 20), self.r.randint(1, 9)), "CARD")
        return (self.pick(NUM_WORDS), "CARD")

    def year(self):
        return (str(self.r.randint(1945, 1996)), "CARD")

    def person(self):
        out = []
        if self.p(0.3):
            out.append((self.pick(["Minister", "Bürgermeister", "Präsident", "Landrat", "Trainer",
                                   "Sprecher", "Professor", "Kanzler"]), "NN"))
        if self.p(0.5):
            out.append((self.pick(FIRST_NAMES), "NE"))
        if self.p(0.3):
            out.append((self.pick(self.rare_names), "NE"))
        else:
            out.append((self.pick(SURNAMES), "NE"))
        return out

    def place(self):
        if self.p(0.2):
            return [(self.pick(self.rare_names) + self.pick(["dorf", "hausen", "stadt", "ingen"]), "NE")]
        return [(self.pick(PLACES), "NE")]

    # ------------------------------------------------------------ phrases
    def np(self, case, allow_pron=True):
        """Returns (tokens, number) with number in sg pl."""
        k = self.r.random()
        if allow_pron and k < 0.1 and case in ("nom", "acc", "dat"):
            forms = {"nom": [("er", "sg"), ("sie", "sg"), ("es", "sg"), ("wir", "pl"), ("sie", "pl")],
                     "acc": [("ihn", "sg"), ("sie", "sg"), ("es", "sg"), ("uns", "pl")],
                     "dat": [("ihm", "sg"), ("ihr", "sg"), ("ihnen", "pl")]}[case]
            f, num = self.pick(forms)
            return [(f, "PPER")], num
        if allow_pron and case == "nom" and k < 0.13:
            return [("man", "PIS")], "sg"
        if allow_pron and case == "nom" and k < 0.16:
            return [(self.pick(["viele", "einige", "alle", "beide", "andere"]), "PIS")], "pl"
        if allow_pron and case == "nom" and k < 0.175:
            return [(self.pick(["der", "die"]), "PDS")], "sg"
        if allow_pron and case == "nom" and k < 0.185:
            return [("einer", "PIS"), ("der", "ART"), (self.noun()[1], "NN")], "sg"
        if k < 0.25 and case != "gen":
            toks = self.person() if self.p(0.6) else self.place()
            return toks, "sg"
        if k < 0.28 and case in ("nom", "acc"):
            return [(self.pick(ORGS), "NE")], "pl" if self.p(0.2) else "sg"
        sg, pl, g = self.noun()
        plural = self.p(0.3)
        toks = []
        kind = self.r.random()
        if plural:
            if kind < 0.55:
                toks.append((DEF[case]["p"], "ART"))
                det = "def"
            elif kind < 0.65:
                toks.append((DEMO[case]["p"], "PDAT"))
                det = "def"
            elif kind < 0.75:
                toks.append((self.pick(["viele", "einige", "alle", "mehrere"]) if case != "dat" else "vielen", "PIAT"))
                det = "strong"
            elif kind < 0.85:
                toks.append(self.number_token())
                det = "strong"
            elif kind < 0.92:
                toks.append((self.pick(["sein", "ihr", "unser"]) + POSS[case]["p"], "PPOSAT"))
                det = "def"
            else:
                det = "strong"
        else:
            if kind < 0.6:
                toks.append((DEF[case][g], "ART"))
                det = "def"
            elif kind < 0.85:
                toks.append((INDEF[case][g], "ART"))
                det = "indef"
            elif kind < 0.92:
                toks.append((DEMO[case][g], "PDAT"))
                det = "def"
            else:
                toks.append((self.pick(["sein", "ihr", "unser"]) + POSS[case][g], "PPOSAT"))
                det = "indef" if POSS[case][g] in ("",) else "def"
        if self.p(0.3):
            if self.p(0.15):
                toks.append((self.pick(["sehr", "besonders", "relativ"]), "ADV"))
            toks.append(self.adjective(case, g, plural, det))
        noun = pl if plural else sg
        if case == "dat" and plural and not noun.endswith(("n", "s")):
            noun += "n"
        if case == "gen" and not plural and g in "mn" and not noun.endswith(("s", "e")):
            noun += "s"
        toks.append((noun, "NN"))
        if case != "gen" and self.p(0.12):
            gen, _ = self.np("gen", allow_pron=False)
            toks += gen
        return toks, "pl" if plural else "sg"

    def pp(self):
        k = self.r.random()
        if k < 0.1:
            day = self.pick(WEEKDAYS)
            return [("am", "APPRART"), (day, "NN")]
        if k < 0.16:
            return [("am", "APPRART"), ("%d." % self.r.randint(1, 31), "ADJA"), (self.pick(MONTHS), "NN")]
        if k < 0.21:
            return [(self.pick(["seit", "bis", "nach", "vor", "ab"]), "APPR"), self.year()]
        if k < 0.3:
            return [(self.pick(["in", "aus", "nach", "bei"]), "APPR")] + self.place()
        if k < 0.45:
            prep = self.pick(["in", "an", "zu", "von", "bei"])
            sg, pl, g = self.noun()
            key = (prep, g)
            if key in APPRART:
                toks = [(APPRART[key], "APPRART")]
                if self.p(0.25):
                    toks.append(self.adjective("dat", g, False, "def"))
                return toks + [(sg, "NN")]
        if k < 0.7:
            prep = self.pick(PREP_DAT + PREP_TWO)
            np, _ = self.np("dat", allow_pron=self.p(0.3))
            return [(prep, "APPR")] + np
        prep = self.pick(PREP_ACC)
        np, _ = self.np("acc", allow_pron=self.p(0.3))
        return [(prep, "APPR")] + np

    def adv(self):
        if self.p(0.1):
            return [(self.pick(["dafür", "darüber", "dagegen", "damit", "davon", "deshalb"][:5]), "PAV")]
        return [(self.pick(ADVERBS), "ADV")]

    def finite(self, verb, num, past):
        inf, s3, p3s, p3p, pp, part, trans = verb
        if past:
            return p3s if num == "sg" else p3p
        return s3 if num == "sg" else inf

    def rare_verb(self):
        stem = self.pick(RARE_VERB_STEMS)
        return (stem + "en", stem + "t", stem + "te", stem + "ten", stem + "t", None, True)

    def verb(self, transitive=None):
        if self.p(0.1):
            return self.rare_verb()
        while True:
            v = self.pick(VERBS)
            if transitive is None or v[6] == transitive:
                return v

    def aux_perfect(self, verb, num, past):
        have = verb[0] not in INTRANSITIVE_SEIN
        if have:
            f = ("hatte" if num == "sg" else "hatten") if past else ("hat" if num == "sg" else "haben")
        else:
            f = ("war" if num == "sg" else "waren") if past else ("ist" if num == "sg" else "sind")
        return (f, "VAFIN")

    def modal(self, num):
        sg = ["kann", "muss", "soll", "will", "darf", "konnte", "sollte", "wollte", "musste"]
        pl = ["können", "müssen", "sollen", "wollen", "dürfen", "konnten", "sollten", "wollten", "mussten"]
        return (self.pick(sg if num == "sg" else pl), "VMFIN")

    def infinitive(self, verb):
        if verb[5]:
            return [(verb[5] + verb[0], "VVINF")]
        return [(verb[0], "VVINF")]

    def zu_infinitive(self, verb):
        if verb[5]:
            return [(verb[5] + "zu" + verb[0], "VVIZU")]
        return [("zu", "PTKZU"), (verb[0], "VVINF")]

    def participle(self, verb):
        return (verb[4], "VVPP")

    def verb_final_finite(self, verb, num, past):
        f = self.finite(verb, num, past)
        if verb[5]:
            return [(verb[5] + f, "VVFIN")]
        return [(f, "VVFIN")]

    def obj_or_pp(self, verb):
        out = []
        if verb[6]:
            out += self.np("acc")[0]
        if self.p(0.45):
            out += self.pp()
        return out

    # ------------------------------------------------------------ clauses
    def main_clause(self):
        past = self.p(0.45)
        subj, num = self.np("nom")
        k = self.r.random()
        verb = self.verb()
        pre = []
        if self.p(0.25):
            pre = self.pp() if self.p(0.6) else self.adv()
        middle = []
        if self.p(0.3):
            middle += self.adv()
        if self.p(0.08):
            middle.append(("nicht", "PTKNEG"))
        if self.p(0.08):
            middle.append((self.pick(["schnell", "deutlich", "stark", "klar", "hart", "gut", "lange", "früh", "spät", "offen", "knapp"]), "ADJD"))
        if k < 0.36:
            v = self.finite(verb, num, past)
            head = [(v, "VVFIN")]
            tail = self.obj_or_pp(verb)
            if verb[5]:
                tail = tail + [(verb[5], "PTKVZ")]
        elif k < 0.54:
            head = [self.aux_perfect(verb, num, past)]
            tail = self.obj_or_pp(verb) + [self.participle(verb)]
        elif k < 0.66:
            head = [self.modal(num)]
            tail = self.obj_or_pp(verb) + self.infinitive(verb)
        elif k < 0.72:
            # future
            head = [("wird" if num == "sg" else "werden", "VAFIN")]
            tail = self.obj_or_pp(verb) + self.infinitive(verb)
        elif k < 0.78:
            # modal passive
            subj, num = self.np("nom", allow_pron=False)
            head = [self.modal(num)]
            v = self.verb(True)
            tail = (self.pp() if self.p(0.5) else []) + [self.participle(v), ("werden", "VAINF")]
        elif k < 0.81:
            # modal perfect or predicative infinitive
            head = [self.modal(num)]
            if self.p(0.5):
                tail = self.obj_or_pp(verb) + [self.participle(verb), ("haben" if verb[0] not in INTRANSITIVE_SEIN else "sein", "VAINF")]
            else:
                tail = (self.pp() if self.p(0.5) else []) + [(self.pick(["fertig", "bereit", "zufrieden", "sicher", "teuer"]), "ADJD"), ("sein", "VAINF")]
        elif k < 0.84:
            # comparison with als
            head = [(self.finite(verb, num, past), "VVFIN")]
            tail = [("als", "KOKOM"), (self.pick(["Trainer", "Sprecher", "Vorsitzender", "Berater", "Leiter", "Richter", "Koch"]), "NN")]
            if verb[5]:
                tail.append((verb[5], "PTKVZ"))
        elif k < 0.9:
            # passive
            subj, num = self.np("nom", allow_pron=False)
            head = [(("wurde" if num == "sg" else "wurden") if past else ("wird" if num == "sg" else "werden"), "VAFIN")]
            v = self.verb(True)
            tail = (self.pp() if self.p(0.5) else []) + [self.participle(v)]
        else:
            # predicative
            head = [(("war" if num == "sg" else "waren") if past else ("ist" if num == "sg" else "sind"), "VAFIN")]
            adj = self.pick([a for a in ADJECTIVES if a not in PRED_ONLY] + RARE_ADJ_BASES[:8])
            tail = []
            if self.p(0.2):
                tail.append(("zu", "PTKA"))
            tail.append((adj, "ADJD"))
        if pre:
            return pre + head + subj + middle + tail
        return subj + head + middle + tail

    def sub_clause(self):
        """Verb-final clause after a complementizer."""
        past = self.p(0.5)
        subj, num = self.np("nom")
        verb = self.verb()
        body = []
        if self.p(0.2):
            body += self.adv()
        body += self.obj_or_pp(verb)
        k = self.r.random()
        if k < 0.55:
            body += self.verb_final_finite(verb, num, past)
        elif k < 0.8:
            body += [self.participle(verb), self.aux_perfect(verb, num, past)]
        else:
            body += self.infinitive(verb) + [self.modal(num)]
        return subj + body

    def relative(self, gender, plural):
        past = self.p(0.5)
        if self.p(0.35):
            # object relative: den/die/das + subject + verb
            rel = DEF["acc"]["p" if plural else gender]
            subj, num = self.np("nom", allow_pron=self.p(0.5))
            verb = self.verb(True)
            body = [(rel, "PRELS")] + subj
            if self.p(0.3):
                body += self.pp()
            if self.p(0.4):
                return body + [self.participle(verb), self.aux_perfect(verb, num, past)]
            return body + self.verb_final_finite(verb, num, past)
        if self.p(0.15):
            # dative relative
            rel = {"m": "dem", "f": "der", "n": "dem", "p": "denen"}["p" if plural else gender]
            subj, num = self.np("nom", allow_pron=False)
            return [(rel, "PRELS")] + subj + [(self.pick(["half", "hilft", "gehört", "gehörte", "fehlt", "fehlte"]), "VVFIN")]
        rel = "die" if plural else {"m": "der", "f": "die", "n": "das"}[gender]
        verb = self.verb()
        body = [(rel, "PRELS")]
        if self.p(0.3):
            body += self.adv()
        body += self.obj_or_pp(verb)
        body += self.verb_final_finite(verb, "pl" if plural else "sg", past)
        return body

    def sentence(self):
        k = self.r.random()
        if self.style == "admin":
            return self.admin_sentence()
        if k < 0.38:
            s = self.main_clause()
        elif k < 0.5:
            verb = self.pick(SAY_VERBS)
            subj, num = self.np("nom")
            s = subj + [(self.finite(verb, num, True), "VVFIN"), (",", "$,"), ("dass", "KOUS")] + self.sub_clause()
        elif k < 0.58:
            sg, pl, g = self.noun()
            plural = self.p(0.3)
            subj = [(DEF["nom"]["p" if plural else g], "ART"), (pl if plural else sg, "NN")]
            verb = self.verb()
            rest = [(self.finite(verb, "pl" if plural else "sg", True), "VVFIN")] + self.obj_or_pp(verb)
            if verb[5]:
                rest.append((verb[5], "PTKVZ"))
            s = subj + [(",", "$,")] + self.relative(g, plural) + [(",", "$,")] + rest
        elif k < 0.66:
            subj, num = self.np("nom")
            v = self.pick(["planen", "versuchen", "hoffen", "beschließen"])
            fin = {"planen": ("plant", "planen"), "versuchen": ("versucht", "versuchen"),
                   "hoffen": ("hofft", "hoffen"), "beschließen": ("beschließt", "beschließen")}[v]
            obj_verb = self.verb(True)
            s = subj + [(fin[0] if num == "sg" else fin[1], "VVFIN"), (",", "$,")]
            if self.p(0.3):
                s = [("Um", "KOUI")] + self.np("acc", allow_pron=False)[0] + self.zu_infinitive(obj_verb) + \
                    [(",", "$,")] + [self.modal(num)] + subj + self.obj_or_pp(self.verb(True)) + \
                    self.infinitive(self.verb(True))
            else:
                s += self.np("acc", allow_pron=False)[0] + self.zu_infinitive(obj_verb)
        elif k < 0.73:
            s = self.main_clause() + [(",", "$,"), (self.pick(["weil", "wenn", "obwohl", "nachdem", "als", "bis", "seit", "da", "während", "damit", "ob"]), "KOUS")] + self.sub_clause()
        elif k < 0.79:
            s = self.main_clause() + [(",", "$,") if self.p(0.5) else None, (self.pick(["und", "aber", "doch"]), "KON")] + self.main_clause()
            s = [t for t in s if t is not None]
        elif k < 0.82:
            # main clause whose object carries a relative clause
            subj, num = self.np("nom")
            verb = self.verb(True)
            sg, pl, g = self.noun()
            plural = self.p(0.3)
            obj = [(DEF["acc"]["p" if plural else g], "ART"), (pl if plural else sg, "NN")]
            s = subj + [(self.finite(verb, num, self.p(0.5)), "VVFIN")] + obj + [(",", "$,")] + self.relative(g, plural)
        elif k < 0.86:
            quote = capitalize(self.main_clause())
            sayer = self.person()
            s = [("\"", "$(")] + quote + [("\"", "$("), (",", "$,"), (self.pick(["sagte", "erklärte", "betonte"]), "VVFIN")] + sayer
        elif k < 0.89:
            # demonstrative das / dies
            s = [(self.pick(["das", "das", "dies", "die", "der"]), "PDS"), (self.pick(["ist", "war", "sei"]), "VAFIN")]
            if self.p(0.5):
                s += self.adv()
            s += self.np("nom", allow_pron=False)[0]
        elif k < 0.92:
            subj, num = self.np("nom")
            s = subj + [(self.pick(["hat", "hatte"]) if num == "sg" else self.pick(["haben", "hatten"]), "VAFIN")] + \
                [(self.pick(["mehr", "weniger"]), "PIAT") if self.p(0.5) else ("rund", "ADV")] + \
                ([("als", "KOKOM")] if self.p(0.3) else []) + [self.number_token()] + [(self.noun()[1], "NN")]
        elif k < 0.94:
            a, b = self.pick([("Nord", "Süd"), ("Ost", "West"), ("Land", "Bundes"), ("Vor", "Nach")])
            head = self.noun()
            s = self.np("nom")[0] + [(self.pick(["fordert", "kritisiert", "plant"]), "VVFIN")] + \
                [(a + "-", "TRUNC"), ("und", "KON"), (b + head[0].lower(), "NN")]
        elif k < 0.96:
            # comparison
            subj, num = self.np("nom")
            s = subj + [(("ist" if num == "sg" else "sind"), "VAFIN"), (self.pick(["so", "genauso"]), "ADV"),
                        (self.pick(["groß", "teuer", "wichtig", "alt"]), "ADJD"), ("wie", "KOKOM")] + self.np("nom", allow_pron=False)[0]
        elif k < 0.98:
            # parenthesis
            s = self.main_clause()
            s = s + [("(", "$(")] + self.place() + [(")", "$(")]
        else:
            # question
            s = [(self.pick(["Wer", "Was"]), "PWS"), (self.pick(["hat", "wird", "kann"]), "VAFIN" if self.p(0.6) else "VMFIN")] + \
                self.np("acc", allow_pron=False)[0] + [self.participle(self.verb(True))]
            s[1] = (s[1][0], "VMFIN" if s[1][0] == "kann" else "VAFIN")
            if s[1][1] == "VMFIN":
                s[-1] = (self.verb(True)[0], "VVINF")
            return s + [("?", "$.")]
        end = "." if self.p(0.95) else self.pick(["!", ":"])
        return s + [(end, "$.")]

    def admin_sentence(self):
        k = self.r.random()
        if k < 0.3:
            subj, num = self.np("nom", allow_pron=False)
            v = self.verb(True)
            s = subj + [(("ist" if num == "sg" else "sind"), "VAFIN")] + self.pp() + \
                self.np("dat", allow_pron=False)[0][:0] + self.zu_infinitive(v)
        elif k < 0.55:
            subj, num = self.np("nom", allow_pron=False)
            s = [("Gemäß", "APPR"), ("§", "XY"), (str(self.r.randint(1, 120)), "CARD"), ("Abs.", "XY"),
                 (str(self.r.randint(1, 5)), "CARD")] + [(("wird" if num == "sg" else "werden"), "VAFIN")] + \
                subj + self.pp() + [self.participle(self.verb(True))]
        elif k < 0.75:
            subj, num = self.np("nom", allow_pron=False)
            s = subj + [(("wird" if num == "sg" else "werden"), "VAFIN")] + self.pp() + self.pp() + \
                [self.participle(self.verb(True))]
        elif k < 0.9:
            s = [("Der", "ART"), ("Antrag", "NN")] + self.np("gen", allow_pron=False)[0] + \
                [("ist", "VAFIN"), ("bis", "APPR"), ("zum", "APPRART"), ("%d." % self.r.randint(1, 28), "ADJA"),
                 (self.pick(MONTHS), "NN"), self.year()] + self.pp() + [("einzureichen", "VVIZU")]
        else:
            s = [("Die", "ART"), ("Kosten", "NN"), ("trägt", "VVFIN")] + self.np("nom", allow_pron=False)[0]
        return s + [(".", "$.")]


def capitalize(tokens):
    f, t = tokens[0]
    if f[0].islower():
        tokens[0] = (f[0].upper() + f[1:], t)
    return tokens


def generate(seed, style, target_tokens):
    g = Gen(seed, style)
    out = []
    total = 0
    while total < target_tokens:
        s = capitalize(g.sentence())
        out.append(s)
        total += len(s)
    return out


def write(path, sentences):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i, s in enumerate(sentences):
            if i:
                fh.write("\n")
            for f, t in s:
                assert f and "\t" not in f and " " not in f, f
                fh.write("%s\t%s\n" % (f, t))


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    write(out / "news.vrt", generate(1995, "news", 20000))
    write(out / "admin.vrt", generate(1996, "admin", 4000))


if __name__ == "__main__":
    main()
