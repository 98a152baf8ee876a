/** UI strings, externalized so the console can run in English or Bangla. */

export type Locale = "en" | "bn";

export interface MessageCatalog {
  queryLabel: string;
  queryPlaceholder: string;
  submit: string;
  modeRag: string;
  modeKg: string;
  working: string;
  retry: string;
  errorPrefix: string;
  snippetsHeading: string;
  chainsHeading: string;
  interventionsHeading: string;
  generalHeading: string;
  citationsLabel: string;
  ratingHeading: string;
  ratingSubmit: string;
  ratingThanks: string;
  ratingIncomplete: string;
  emptyHistory: string;
}

export const MESSAGES: Record<Locale, MessageCatalog> = {
  en: {
    queryLabel: "Client situation",
    queryPlaceholder: "Describe the client's situation in a sentence or two",
    submit: "Draft a response",
    modeRag: "Past cases",
    modeKg: "Knowledge graph",
    working: "Drafting...",
    retry: "Retry",
    errorPrefix: "Request failed",
    snippetsHeading: "Cited case snippets",
    chainsHeading: "Causal chains",
    interventionsHeading: "Matched interventions",
    generalHeading: "Generally effective",
    citationsLabel: "Citations",
    ratingHeading: "Rate this draft (1 = best, 5 = worst)",
    ratingSubmit: "Submit rating",
    ratingThanks: "Rating recorded",
    ratingIncomplete: "Select a value for every category",
    emptyHistory: "No drafts yet",
  },
  bn: {
    queryLabel: "ক্লায়েন্টের পরিস্থিতি",
    queryPlaceholder: "ক্লায়েন্টের পরিস্থিতি লিখুন",
    submit: "খসড়া তৈরি করুন",
    modeRag: "পুরনো কেস",
    modeKg: "জ্ঞান গ্রাফ",
    working: "তৈরি হচ্ছে...",
    retry: "আবার চেষ্টা করুন",
    errorPrefix: "অনুরোধ ব্যর্থ হয়েছে",
    snippetsHeading: "উদ্ধৃত কেস অংশ",
    chainsHeading: "কারণ শৃঙ্খল",
    interventionsHeading: "প্রাসঙ্গিক পদক্ষেপ",
    generalHeading: "সাধারণভাবে কার্যকর",
    citationsLabel: "উদ্ধৃতি",
    ratingHeading: "খসড়া মূল্যায়ন করুন (1 = সেরা, 5 = নিকৃষ্ট)",
    ratingSubmit: "মূল্যায়ন পাঠান",
    ratingThanks: "মূল্যায়ন সংরক্ষিত হয়েছে",
    ratingIncomplete: "প্রতিটি বিভাগের মান দিন",
    emptyHistory: "এখনও কোনও খসড়া নেই",
  },
};

export function catalogFor(locale: Locale): MessageCatalog {
  return MESSAGES[locale];
}
