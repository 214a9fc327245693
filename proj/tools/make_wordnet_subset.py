#!/usr/bin/env python3
"""Writes a small noun hypernym graph in WordNet 3.0 dict format.

The graph covers the head words of the privacy keyword lists plus a few
near-synonyms used by the tests. Offsets are real byte offsets into
data.noun, so any WordNet reader can load the output.

    python3 tools/make_wordnet_subset.py data/wordnet
"""
import os
import sys

# key: (lemmas in order, hypernym key or None, lexicographer file number, gloss)
SYNSETS = [
    ("entity", ["entity"], None, 3, "that which is perceived or known or inferred to have its own distinct existence"),
    ("physical_entity", ["physical_entity"], "entity", 3, "an entity that has physical existence"),
    ("abstraction", ["abstraction", "abstract_entity"], "entity", 3, "a general concept formed by extracting common features"),
    ("object", ["object", "physical_object"], "physical_entity", 3, "a tangible and visible entity"),
    ("whole", ["whole", "unit"], "object", 3, "an assemblage of parts that is regarded as a single entity"),
    ("artifact", ["artifact", "artefact"], "whole", 6, "a man-made object taken as a whole"),
    ("instrumentality", ["instrumentality", "instrumentation"], "artifact", 6, "an artifact that is instrumental in accomplishing some end"),
    ("device", ["device"], "instrumentality", 6, "an instrumentality invented for a particular purpose"),
    ("equipment", ["equipment"], "instrumentality", 6, "an instrumentality needed for an undertaking"),
    ("electronic_equipment", ["electronic_equipment"], "equipment", 6, "equipment that involves the controlled conduction of electrons"),
    ("telephone", ["telephone", "phone", "telephone_set"], "electronic_equipment", 6, "electronic equipment that converts sound into electrical signals"),
    ("radiotelephone", ["radiotelephone", "radiophone", "wireless_telephone"], "telephone", 6, "a telephone that communicates by radio waves"),
    ("cellular_telephone", ["cellular_telephone", "cellular_phone", "cellphone", "cell", "mobile_phone"], "radiotelephone", 6, "a hand-held mobile radiotelephone"),
    ("handset", ["handset", "french_telephone"], "telephone", 6, "a telephone set with the mouthpiece and earpiece mounted on a single handle"),
    ("scanner", ["scanner", "digital_scanner", "image_scanner"], "electronic_equipment", 6, "an electronic device that generates a digital representation of an image"),
    ("electrical_device", ["electrical_device"], "device", 6, "a device that produces or is powered by electricity"),
    ("transducer", ["transducer"], "electrical_device", 6, "an electrical device that converts one form of energy into another"),
    ("electro-acoustic_transducer", ["electro-acoustic_transducer"], "transducer", 6, "a transducer that converts electrical to acoustic energy or vice versa"),
    ("microphone", ["microphone", "mike", "mic"], "electro-acoustic_transducer", 6, "device for converting sound waves into electrical energy"),
    ("photographic_equipment", ["photographic_equipment"], "equipment", 6, "equipment used by a photographer"),
    ("camera", ["camera", "photographic_camera"], "photographic_equipment", 6, "equipment for taking photographs"),
    ("sculpture", ["sculpture"], "artifact", 6, "a three-dimensional work of plastic art"),
    ("mobile", ["mobile"], "sculpture", 6, "a large and light sculpture with delicately balanced parts"),
    ("creation", ["creation"], "artifact", 6, "an artifact that has been brought into existence by someone"),
    ("representation", ["representation"], "creation", 6, "a creation that is a visual or tangible rendering of someone or something"),
    ("picture", ["picture", "image", "icon", "ikon"], "representation", 6, "a visual representation of an object or scene or person"),
    ("photograph", ["photograph", "photo", "exposure", "picture", "pic"], "representation", 6, "a representation of a person or scene in the form of a print or transparent slide"),
    ("snapshot", ["snapshot", "snap", "shot"], "photograph", 6, "an informal photograph; usually made with a small hand-held camera"),
    ("scan", ["scan"], "picture", 6, "an image produced by scanning"),
    ("recording", ["recording"], "representation", 6, "a signal that encodes something for later reproduction"),
    ("video", ["video", "video_recording", "television_recording"], "recording", 6, "a recording of both the visual and audible components"),
    ("voice_recording", ["voice_recording", "voice_memo"], "recording", 6, "a recording of a spoken voice"),
    ("product", ["product", "production"], "creation", 6, "an artifact that has been created by someone or some process"),
    ("work", ["work", "piece_of_work"], "product", 6, "something produced or accomplished through an effort"),
    ("publication", ["publication"], "work", 6, "a copy of a printed work offered for distribution"),
    ("book", ["book", "volume"], "publication", 6, "a written work or composition that has been published"),
    ("album", ["album"], "book", 6, "a book of blank pages with pockets or envelopes for photographs"),
    ("structure", ["structure", "construction"], "artifact", 6, "a thing constructed; a complex entity constructed of many parts"),
    ("area", ["area"], "structure", 6, "a part of a structure having some specific characteristic or function"),
    ("room", ["room"], "area", 6, "an area within a building enclosed by walls and floor and ceiling"),
    ("gallery", ["gallery", "art_gallery", "picture_gallery"], "room", 6, "a room or series of rooms where works of art are exhibited"),
    ("library", ["library"], "room", 6, "a room where books are kept"),
    ("location", ["location"], "object", 15, "a point or extent in space"),
    ("point", ["point"], "location", 15, "the precise location of something; a spatially limited location"),
    ("position", ["position", "place"], "point", 15, "the particular portion of space occupied by something"),
    ("topographic_point", ["topographic_point", "place", "spot"], "point", 15, "a point located with respect to surface features of some region"),
    ("geographic_point", ["geographic_point", "geographical_point"], "point", 15, "a point on the surface of the Earth"),
    ("address", ["address", "mailing_address"], "geographic_point", 15, "the place where a person or organization can be found or communicated with"),
    ("residence", ["residence", "abode"], "address", 15, "any address at which you dwell more than a brief time"),
    ("whereabouts", ["whereabouts"], "location", 15, "the general location where something is"),
    ("region", ["region"], "location", 15, "a large indefinite location on the surface of the Earth"),
    ("substance", ["substance", "matter"], "physical_entity", 27, "that which has mass and occupies space"),
    ("material", ["material", "stuff"], "substance", 27, "the tangible substance that goes into the makeup of a physical object"),
    ("paper", ["paper"], "material", 27, "a material made of cellulose pulp"),
    ("card", ["card"], "paper", 6, "one of a set of small pieces of stiff paper marked in various ways"),
    ("living_thing", ["living_thing", "animate_thing"], "whole", 3, "a living (or once living) entity"),
    ("organism", ["organism", "being"], "living_thing", 3, "a living thing that has the ability to act or function independently"),
    ("person", ["person", "individual", "someone", "somebody"], "organism", 18, "a human being"),
    ("user", ["user"], "person", 18, "a person who makes use of a thing"),
    ("psychological_feature", ["psychological_feature"], "abstraction", 3, "a feature of the mental life of a living organism"),
    ("cognition", ["cognition", "knowledge", "noesis"], "psychological_feature", 9, "the psychological result of perception and learning and reasoning"),
    ("content", ["content", "cognitive_content", "mental_object"], "cognition", 9, "the sum or range of what has been perceived, discovered, or learned"),
    ("knowledge_domain", ["knowledge_domain", "knowledge_base", "domain"], "content", 9, "the content of a particular field of knowledge"),
    ("discipline", ["discipline", "subject", "field"], "knowledge_domain", 9, "a branch of knowledge"),
    ("science", ["science", "scientific_discipline"], "discipline", 9, "a particular branch of scientific knowledge"),
    ("natural_science", ["natural_science"], "science", 9, "the sciences involved in the study of the physical world"),
    ("earth_science", ["earth_science"], "natural_science", 9, "any of the sciences that deal with the earth or its parts"),
    ("geography", ["geography", "geographics"], "earth_science", 9, "study of the earth's surface"),
    ("event", ["event"], "psychological_feature", 11, "something that happens at a given place and time"),
    ("act", ["act", "deed", "human_action", "human_activity"], "event", 4, "something that people do or cause to happen"),
    ("action", ["action"], "act", 4, "something done (usually as opposed to something said)"),
    ("change", ["change"], "action", 4, "the action of changing something"),
    ("beginning", ["beginning"], "change", 4, "the act of starting something"),
    ("birth", ["birth", "nativity", "nascency"], "beginning", 4, "the event of being born"),
    ("interaction", ["interaction"], "action", 4, "a mutual or reciprocal action"),
    ("contact", ["contact"], "interaction", 4, "close interaction"),
    ("activity", ["activity"], "act", 4, "any specific behavior"),
    ("storage", ["storage"], "activity", 4, "the act of storing something"),
    ("communication", ["communication"], "abstraction", 10, "something that is communicated by or to or between people or groups"),
    ("message", ["message", "content", "subject_matter", "substance"], "communication", 10, "what a communication that is about something is about"),
    ("information", ["information", "info"], "message", 10, "a message received and understood"),
    ("data", ["data", "information"], "information", 14, "a collection of facts from which conclusions may be drawn"),
    ("electronic_mail", ["electronic_mail", "e-mail", "email"], "message", 10, "a system of world-wide electronic communication"),
    ("statement", ["statement"], "message", 10, "a message that is stated or declared"),
    ("description", ["description", "verbal_description"], "statement", 10, "a statement that represents something in words"),
    ("sketch", ["sketch", "vignette"], "description", 10, "a brief literary description"),
    ("profile", ["profile"], "sketch", 10, "a biographical sketch"),
    ("written_communication", ["written_communication", "written_language", "black_and_white"], "communication", 10, "communication by means of written symbols"),
    ("writing", ["writing", "written_material", "piece_of_writing"], "written_communication", 10, "the work of a writer; anything expressed in letters of the alphabet"),
    ("record", ["record"], "writing", 10, "anything providing permanent evidence about past events"),
    ("account", ["account", "chronicle", "history", "story"], "record", 10, "a record or narrative description of past events"),
    ("directory", ["directory"], "writing", 10, "an alphabetical list of names and addresses"),
    ("phone_book", ["telephone_directory", "telephone_book", "phone_book"], "directory", 10, "a directory containing an alphabetical list of telephone subscribers"),
    ("telecommunication", ["telecommunication", "telecom"], "communication", 10, "(often plural) systems used in transmitting messages over a distance electronically"),
    ("call", ["call", "phone_call", "telephone_call"], "telecommunication", 10, "a telephone connection"),
    ("transmission", ["transmission", "transmittal"], "communication", 10, "communication by means of transmitted signals"),
    ("media", ["media", "mass_media"], "transmission", 10, "transmissions that are disseminated widely to the public"),
    ("speech", ["speech", "speech_communication", "spoken_communication", "spoken_language"], "communication", 10, "communication by word of mouth"),
    ("talk", ["talk", "talking"], "speech", 10, "an exchange of ideas via conversation"),
    ("sound", ["sound"], "communication", 11, "the sudden occurrence of an audible event"),
    ("twitter", ["twitter"], "sound", 11, "a series of chirps"),
    ("voice", ["voice"], "sound", 7, "the distinctive quality or pitch or condition of a person's speech"),
    ("relation", ["relation"], "abstraction", 24, "an abstraction belonging to or characteristic of two entities or parts together"),
    ("part", ["part", "portion", "component_part"], "relation", 24, "something determined in relation to something that includes it"),
    ("language_unit", ["language_unit", "linguistic_unit"], "part", 10, "one of the natural units into which linguistic messages can be analyzed"),
    ("name", ["name"], "language_unit", 10, "a language unit by which a person or thing is known"),
    ("surname", ["surname", "family_name", "cognomen", "last_name"], "name", 10, "the name used to identify the members of a family"),
    ("first_name", ["first_name", "given_name", "forename"], "name", 10, "the name that precedes the surname"),
    ("nickname", ["nickname", "moniker", "cognomen", "sobriquet", "byname"], "name", 10, "a familiar name for a person"),
    ("possession", ["possession"], "relation", 21, "anything owned or possessed"),
    ("assets", ["assets"], "possession", 21, "anything of material value or usefulness that is owned"),
    ("share", ["share", "portion", "percentage"], "assets", 21, "assets belonging to or due to or contributed by an individual person or group"),
    ("transferred_property", ["transferred_property", "transferred_possession"], "possession", 21, "a possession whose ownership changes"),
    ("outgo", ["outgo", "spending", "expenditure", "outlay"], "transferred_property", 21, "money paid out"),
    ("cost", ["cost"], "outgo", 21, "the total spent for goods or services"),
    ("payment", ["payment"], "cost", 21, "a sum of money paid or a claim discharged"),
    ("regular_payment", ["regular_payment"], "payment", 21, "payments of fixed amounts at regular intervals"),
    ("pay", ["wage", "pay", "earnings", "remuneration", "salary"], "regular_payment", 21, "something that remunerates"),
    ("measure", ["measure", "quantity", "amount"], "abstraction", 23, "how much there is or how many there are of something"),
    ("time_unit", ["time_unit", "unit_of_time"], "measure", 28, "a unit for measuring time periods"),
    ("day", ["day", "twenty-four_hours", "solar_day"], "time_unit", 28, "time for Earth to make a complete rotation on its axis"),
    ("date", ["date", "day_of_the_month"], "day", 28, "the specified day of the month"),
    ("anniversary", ["anniversary", "day_of_remembrance"], "day", 28, "the date on which an event occurred in some previous year"),
    ("birthday", ["birthday"], "anniversary", 28, "an anniversary of the day on which a person was born"),
    ("birth_date", ["birthday", "birth_date", "birthdate"], "date", 28, "the date on which a person was born"),
    ("attribute", ["attribute"], "abstraction", 7, "an abstraction belonging to or characteristic of an entity"),
    ("property", ["property"], "attribute", 7, "a basic or essential attribute shared by all members of a class"),
    ("magnitude", ["magnitude"], "property", 7, "the property of relative size or extent"),
    ("number", ["number", "figure"], "magnitude", 7, "the property possessed by a sum or total or indefinite quantity of units"),
    ("phone_number", ["telephone_number", "phone_number", "number"], "telecommunication", 10, "the number is used in calling a particular telephone"),
    ("group", ["group", "grouping"], "abstraction", 14, "any number of entities considered as a unit"),
    ("social_group", ["social_group"], "group", 14, "people sharing some social relation"),
    ("organization", ["organization", "organisation"], "social_group", 14, "a group of people who work together"),
    ("institution", ["institution", "establishment"], "organization", 14, "an organization founded and united for a specific purpose"),
    ("company", ["company"], "institution", 14, "an institution created to conduct business"),
]

HEADER = [
    "  Noun hypernym subset in WordNet 3.0 dict format.",
    "  Generated by tools/make_wordnet_subset.py; offsets are byte offsets.",
]


def main(out_dir):
    keys = [s[0] for s in SYNSETS]
    if len(set(keys)) != len(keys):
        raise SystemExit("duplicate synset key")
    by_key = {s[0]: s for s in SYNSETS}
    children = {k: [] for k in keys}
    for key, _, parent, _, _ in SYNSETS:
        if parent is not None:
            if parent not in by_key:
                raise SystemExit(f"unknown hypernym {parent} for {key}")
            children[parent].append(key)

    def line_for(key, offsets):
        _, lemmas, parent, lexfile, gloss = by_key[key]
        ptrs = []
        if parent is not None:
            ptrs.append(f"@ {offsets[parent]:08d} n 0000")
        for child in children[key]:
            ptrs.append(f"~ {offsets[child]:08d} n 0000")
        words = " ".join(f"{lemma} 0" for lemma in lemmas)
        return (f"{offsets[key]:08d} {lexfile:02d} n {len(lemmas):02x} {words} "
                f"{len(ptrs):03d} {' '.join(ptrs)} | {gloss}  \n")

    header = "".join(h + "\n" for h in HEADER)
    zero = {k: 0 for k in keys}
    offsets = {}
    pos = len(header.encode())
    for key in keys:
        offsets[key] = pos
        pos += len(line_for(key, zero).encode())

    with open(os.path.join(out_dir, "data.noun"), "w", encoding="utf-8", newline="\n") as f:
        f.write(header)
        for key in keys:
            f.write(line_for(key, offsets))

    senses = {}
    for key, lemmas, _, _, _ in SYNSETS:
        for lemma in lemmas:
            senses.setdefault(lemma.lower(), []).append(key)
    with open(os.path.join(out_dir, "index.noun"), "w", encoding="utf-8", newline="\n") as f:
        f.write(header)
        for lemma in sorted(senses):
            synsets = senses[lemma]
            symbols = set()
            for key in synsets:
                if by_key[key][2] is not None:
                    symbols.add("@")
                if children[key]:
                    symbols.add("~")
            symbols = sorted(symbols)
            f.write(f"{lemma} n {len(synsets)} {len(symbols)} "
                    f"{' '.join(symbols) + ' ' if symbols else ''}"
                    f"{len(synsets)} 0 "
                    f"{' '.join(f'{offsets[k]:08d}' for k in synsets)}  \n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/wordnet")
